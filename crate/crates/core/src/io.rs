//! CSV import and export for functions, walks, curves and estimator traces.

use std::io::{Read, Write};

use crate::error::{invalid, Result};
use crate::geom::Point2;
use crate::lil::RunningMaxTrace;
use crate::walk::WalkPath;
use crate::PLFunction;

/// Two columns `t,f`.
pub fn write_pl_csv<W: Write>(out: W, f: &PLFunction) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "f"])?;
    for (t, v) in f.grid().iter().zip(f.values()) {
        w.serialize((t, v))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_pl_csv<R: Read>(input: R) -> Result<PLFunction> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers()?.clone();
    if headers.len() != 2 || &headers[0] != "t" || &headers[1] != "f" {
        return Err(invalid("expected the header 't,f'"));
    }
    let (mut grid, mut values) = (Vec::new(), Vec::new());
    for row in r.deserialize() {
        let (t, v): (f64, f64) = row?;
        grid.push(t);
        values.push(v);
    }
    PLFunction::new(grid, values)
}

/// Header `i,x1,…,xd`, one row per position `S_i`.
pub fn write_walk_csv<W: Write>(out: W, path: &WalkPath) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["i".to_string()];
    header.extend((1..=path.dim()).map(|j| format!("x{j}")));
    w.write_record(&header)?;
    for (i, p) in path.points().enumerate() {
        let mut row = vec![i.to_string()];
        row.extend(p.iter().map(|x| x.to_string()));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Planar curve with header `i,x1,x2`.
pub fn write_curve_csv<W: Write>(out: W, points: &[Point2<f64>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["i", "x1", "x2"])?;
    for (i, p) in points.iter().enumerate() {
        w.serialize((i, p.x, p.y))?;
    }
    w.flush()?;
    Ok(())
}

/// Header `n,replica,value,running_max`, replicas in index order.
pub fn write_trace_csv<W: Write>(out: W, trace: &RunningMaxTrace) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "replica", "value", "running_max"])?;
    for r in trace.replicas() {
        for ((n, v), m) in trace.checkpoints().iter().zip(&r.values).zip(&r.running_max) {
            w.serialize((n, r.replica, v, m))?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::func::f_star;
    use crate::walk::{generate_walk, IncrementModel};

    #[test]
    fn pl_round_trip_is_exact() {
        let f: PLFunction = f_star(2.0, 3.0, 37).unwrap();
        let mut buf = Vec::new();
        write_pl_csv(&mut buf, &f).unwrap();
        assert!(buf.starts_with(b"t,f\n0.0,0.0\n"));
        assert_eq!(read_pl_csv(buf.as_slice()).unwrap(), f);
    }

    #[test]
    fn pl_reader_rejects_bad_input() {
        assert!(read_pl_csv("x,y\n0,0\n1,1\n".as_bytes()).is_err());
        assert!(read_pl_csv("t,f\n0,0\n0,1\n".as_bytes()).is_err());
        assert!(read_pl_csv("t,f\n0,0\n1,abc\n".as_bytes()).is_err());
    }

    #[test]
    fn walk_export_layout() {
        let m = IncrementModel::rademacher_lattice(vec![0.0, 0.0, 0.0]).unwrap();
        let path = generate_walk(&m, 4, 2);
        let mut buf = Vec::new();
        write_walk_csv(&mut buf, &path).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "i,x1,x2,x3");
        assert_eq!(lines[1], "0,0,0,0");
        assert_eq!(lines.len(), 6);
    }
}
