//! CSV output: field snapshots, waterfall data and convergence tables.
//!
//! Numbers are written with 17 significant digits, so reading a file back
//! reproduces every value bit for bit.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SNAPSHOT_HEADER: [&str; 7] = ["t", "x", "u", "chi", "v", "w", "ux"];

/// All fields at one output time.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Snapshot {
    pub t: f64,
    pub x: Vec<f64>,
    pub u: Vec<f64>,
    pub chi: Vec<f64>,
    pub v: Vec<f64>,
    pub w: Vec<f64>,
    /// Strain `u_x`.
    pub ux: Vec<f64>,
}

impl Snapshot {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnapshotRow {
    pub t: f64,
    pub x: f64,
    pub u: f64,
    pub chi: f64,
    pub v: f64,
    pub w: f64,
    pub ux: f64,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io { path: path.to_path_buf(), source }
}

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> Error + '_ {
    move |source| Error::Csv { path: path.to_path_buf(), source }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Write one or more snapshots to a single CSV, one row per grid point.
pub fn write_snapshots(path: &Path, snaps: &[Snapshot]) -> Result<()> {
    let file = std::fs::File::create(path).map_err(io_err(path))?;
    let mut w = csv::Writer::from_writer(std::io::BufWriter::new(file));
    w.write_record(SNAPSHOT_HEADER).map_err(csv_err(path))?;
    for s in snaps {
        let n = s.len();
        for f in [&s.u, &s.chi, &s.v, &s.w, &s.ux] {
            crate::error::check_len(n, f.len())?;
        }
        for i in 0..n {
            w.write_record([num(s.t), num(s.x[i]), num(s.u[i]), num(s.chi[i]), num(s.v[i]), num(s.w[i]), num(s.ux[i])])
                .map_err(csv_err(path))?;
        }
    }
    w.flush().map_err(io_err(path))
}

pub fn write_snapshot(path: &Path, snap: &Snapshot) -> Result<()> {
    write_snapshots(path, std::slice::from_ref(snap))
}

/// Read a snapshot file; rows with equal `t` are grouped in file order.
pub fn read_snapshots(path: &Path) -> Result<Vec<Snapshot>> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err(path))?;
    let mut out: Vec<Snapshot> = Vec::new();
    for row in r.deserialize::<SnapshotRow>() {
        let row = row.map_err(csv_err(path))?;
        if out.last().is_none_or(|s| s.t.to_bits() != row.t.to_bits()) {
            out.push(Snapshot { t: row.t, ..Snapshot::default() });
        }
        let s = out.last_mut().expect("pushed above");
        s.x.push(row.x);
        s.u.push(row.u);
        s.chi.push(row.chi);
        s.v.push(row.v);
        s.w.push(row.w);
        s.ux.push(row.ux);
    }
    Ok(out)
}

/// Single-snapshot convenience; errors unless the file holds exactly one.
pub fn read_snapshot(path: &Path) -> Result<Snapshot> {
    let mut all = read_snapshots(path)?;
    match all.len() {
        1 => Ok(all.pop().expect("len 1")),
        k => Err(Error::Config(format!("{}: expected one snapshot, found {k}", path.display()))),
    }
}

/// Waterfall rows `t, x, ux + kappa t`.
pub fn write_waterfall(path: &Path, snaps: &[Snapshot], kappa: f64) -> Result<()> {
    let file = std::fs::File::create(path).map_err(io_err(path))?;
    let mut w = csv::Writer::from_writer(std::io::BufWriter::new(file));
    w.write_record(["t", "x", "ux_shifted"]).map_err(csv_err(path))?;
    for s in snaps {
        for (x, ux) in s.x.iter().zip(&s.ux) {
            w.write_record([num(s.t), num(*x), num(ux + kappa * s.t)]).map_err(csv_err(path))?;
        }
    }
    w.flush().map_err(io_err(path))
}

/// Write arbitrary text, mapping failures to an error that names the file.
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut f = std::fs::File::create(path).map_err(io_err(path))?;
    f.write_all(text.as_bytes()).map_err(io_err(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(t: f64) -> Snapshot {
        let x: Vec<f64> = (0..5).map(|i| (i as f64 + 0.5) / 5.0).collect();
        let f = |k: f64| x.iter().map(|x| (k * x).sin() / 3.0).collect::<Vec<_>>();
        Snapshot { t, u: f(1.0), chi: f(2.0), v: f(3.0), w: f(-4.0), ux: f(1e-7), x }
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("s.csv");
        let a = sample(0.1);
        let b = sample(1.0 / 3.0);
        write_snapshots(&p, &[a.clone(), b.clone()]).unwrap();
        let back = read_snapshots(&p).unwrap();
        assert_eq!(back.len(), 2);
        for (x, y) in [a, b].iter().zip(&back) {
            assert_eq!(x.t.to_bits(), y.t.to_bits());
            for (f, g) in [(&x.u, &y.u), (&x.chi, &y.chi), (&x.v, &y.v), (&x.w, &y.w), (&x.ux, &y.ux), (&x.x, &y.x)] {
                assert!(f.iter().zip(g).all(|(p, q)| p.to_bits() == q.to_bits()));
            }
        }
    }

    #[test]
    fn header_is_fixed() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("s.csv");
        write_snapshot(&p, &sample(0.0)).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        assert_eq!(text.lines().next().unwrap(), "t,x,u,chi,v,w,ux");
        assert_eq!(text.lines().count(), 6);
    }

    #[test]
    fn unwritable_path_is_named() {
        let p = Path::new("/nonexistent-dir/out.csv");
        let e = write_snapshot(p, &sample(0.0)).unwrap_err();
        assert!(e.to_string().contains("/nonexistent-dir/out.csv"), "{e}");
    }

    #[test]
    fn waterfall_shift() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("w.csv");
        write_waterfall(&p, &[sample(0.5)], 2.0).unwrap();
        let mut r = csv::Reader::from_path(&p).unwrap();
        let row: (f64, f64, f64) = r.deserialize().next().unwrap().unwrap();
        assert_eq!(row.2, sample(0.5).ux[0] + 1.0);
    }
}
