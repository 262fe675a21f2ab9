//! CSV and JSON formats. Every CSV starts with the line `# dlpp-lab v1`.
//!
//! Floats are written in the shortest form that reads back exactly.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use dlpp_core::network::MaximizerNetwork;
use dlpp_core::{Point, PointConfiguration, Region};
use serde::{Deserialize, Serialize};

use crate::experiments::{BranchingRecord, DensityRecord};
use crate::{LabError, Result};

pub const FORMAT_LINE: &str = "# dlpp-lab v1";

/// Output file, or standard output for `None`.
pub fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) => {
            let f = File::create(p).map_err(|source| LabError::Output {
                path: p.to_owned(),
                source,
            })?;
            Ok(Box::new(BufWriter::new(f)))
        }
        None => Ok(Box::new(BufWriter::new(std::io::stdout()))),
    }
}

fn out_err(path: Option<&Path>) -> impl Fn(std::io::Error) -> LabError + '_ {
    move |source| LabError::Output {
        path: path.map_or_else(|| PathBuf::from("<stdout>"), Path::to_owned),
        source,
    }
}

/// Writes the format line, a header and the rows.
pub fn write_csv<I, R>(w: &mut dyn Write, header: &[&str], rows: I) -> std::io::Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    writeln!(w, "{FORMAT_LINE}")?;
    let mut c = csv::Writer::from_writer(w);
    c.write_record(header)?;
    for row in rows {
        c.write_record(row.into_iter())?;
    }
    c.flush()
}

/// Same as [`write_csv`], into `path` or standard output.
pub fn emit_csv<I, R>(path: Option<&Path>, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = open_output(path)?;
    write_csv(&mut *w, header, rows).map_err(out_err(path))?;
    w.flush().map_err(out_err(path))
}

pub fn emit_text(path: Option<&Path>, text: &str) -> Result<()> {
    let mut w = open_output(path)?;
    w.write_all(text.as_bytes()).map_err(out_err(path))?;
    w.flush().map_err(out_err(path))
}

/// Provenance stored next to a point file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sidecar {
    pub region: RegionSpec,
    pub seed: u64,
    pub intensity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegionSpec {
    Rectangle { lo: [f64; 2], hi: [f64; 2] },
    Triangle { t: f64 },
}

impl From<Region> for RegionSpec {
    fn from(r: Region) -> Self {
        match r {
            Region::Rectangle { lo, hi } => RegionSpec::Rectangle {
                lo: [lo.x1, lo.x2],
                hi: [hi.x1, hi.x2],
            },
            Region::Triangle { t } => RegionSpec::Triangle { t },
        }
    }
}

impl From<RegionSpec> for Region {
    fn from(r: RegionSpec) -> Self {
        match r {
            RegionSpec::Rectangle { lo, hi } => Region::Rectangle {
                lo: Point { x1: lo[0], x2: lo[1] },
                hi: Point { x1: hi[0], x2: hi[1] },
            },
            RegionSpec::Triangle { t } => Region::Triangle { t },
        }
    }
}

/// `points.csv` → `points.json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("json")
}

/// Points as `x1,x2` rows; with a path, the sidecar is written as well.
pub fn write_points(path: Option<&Path>, config: &PointConfiguration) -> Result<()> {
    emit_csv(
        path,
        &["x1", "x2"],
        config.points().iter().map(|p| [p.x1.to_string(), p.x2.to_string()]),
    )?;
    if let Some(p) = path {
        let side = Sidecar {
            region: config.region().into(),
            seed: config.seed(),
            intensity: config.intensity(),
        };
        let json = serde_json::to_string_pretty(&side).expect("sidecar serializes") + "\n";
        emit_text(Some(&sidecar_path(p)), &json)?;
    }
    Ok(())
}

/// Reads a point file; without a sidecar the configuration gets the
/// bounding rectangle of its points.
pub fn read_points(path: &Path) -> Result<PointConfiguration> {
    let fmt = |reason: String| LabError::Format {
        path: path.to_owned(),
        reason,
    };
    let file = File::open(path).map_err(|source| LabError::Input {
        path: path.to_owned(),
        source,
    })?;
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(file);
    let header = r.headers().map_err(|e| fmt(e.to_string()))?.clone();
    if header.iter().collect::<Vec<_>>() != ["x1", "x2"] {
        return Err(fmt(format!("expected header x1,x2, found {:?}", header.iter().collect::<Vec<_>>())));
    }
    let mut points = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| fmt(e.to_string()))?;
        let parse = |k: usize| -> Result<f64> {
            rec.get(k)
                .and_then(|s| s.trim().parse::<f64>().ok())
                .ok_or_else(|| fmt(format!("row {}: bad number", i + 1)))
        };
        points.push(Point::new(parse(0)?, parse(1)?)?);
    }
    let side = sidecar_path(path);
    if side.exists() {
        let text = std::fs::read_to_string(&side).map_err(|source| LabError::Input {
            path: side.clone(),
            source,
        })?;
        let s: Sidecar = serde_json::from_str(&text).map_err(|e| LabError::Format {
            path: side.clone(),
            reason: e.to_string(),
        })?;
        Ok(PointConfiguration::new(points, s.region.into(), s.seed, s.intensity)?)
    } else {
        Ok(PointConfiguration::from_points(points)?)
    }
}

pub fn write_network(path: Option<&Path>, net: &MaximizerNetwork) -> Result<()> {
    emit_csv(
        path,
        &["px1", "px2", "qx1", "qx2", "kind"],
        net.edges().map(|(p, q, kind)| {
            [
                p.x1.to_string(),
                p.x2.to_string(),
                q.x1.to_string(),
                q.x2.to_string(),
                kind.as_str().to_string(),
            ]
        }),
    )
}

pub fn write_cdf(path: Option<&Path>, rows: &[(f64, i64, f64)]) -> Result<()> {
    emit_csv(
        path,
        &["t", "a", "p"],
        rows.iter().map(|(t, a, p)| [t.to_string(), a.to_string(), p.to_string()]),
    )
}

pub fn write_branching(path: Option<&Path>, rows: &[BranchingRecord]) -> Result<()> {
    emit_csv(
        path,
        &["t", "nu", "y", "mode", "d_origin", "d_line", "seed"],
        rows.iter().map(|r| {
            [
                r.t.to_string(),
                r.nu.to_string(),
                r.y.to_string(),
                r.mode.as_str().to_string(),
                r.d_origin.to_string(),
                r.d_line.to_string(),
                r.seed.to_string(),
            ]
        }),
    )
}

pub fn write_density(path: Option<&Path>, rows: &[DensityRecord]) -> Result<()> {
    emit_csv(
        path,
        &["t", "mu", "count", "seed"],
        rows.iter()
            .map(|r| [r.t.to_string(), r.mu.to_string(), r.count.to_string(), r.seed.to_string()]),
    )
}

/// Reads `(t, column)` pairs from any CSV in this format with a `t` column.
pub fn read_series(path: &Path, column: &str) -> Result<Vec<(f64, f64)>> {
    let fmt = |reason: String| LabError::Format {
        path: path.to_owned(),
        reason,
    };
    let file = File::open(path).map_err(|source| LabError::Input {
        path: path.to_owned(),
        source,
    })?;
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(file);
    let header = r.headers().map_err(|e| fmt(e.to_string()))?.clone();
    let find = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| fmt(format!("no column {name:?}")))
    };
    let (ti, ci) = (find("t")?, find(column)?);
    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| fmt(e.to_string()))?;
        let get = |k: usize| {
            rec.get(k)
                .and_then(|s| s.trim().parse::<f64>().ok())
                .ok_or_else(|| fmt(format!("row {}: bad number", i + 1)))
        };
        out.push((get(ti)?, get(ci)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dlpp_core::network::{build_network, NetworkOptions};
    use dlpp_core::sampling::sample_triangle;

    #[test]
    fn points_round_trip_with_sidecar() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pts.csv");
        let c = sample_triangle(6.0, 3).unwrap();
        write_points(Some(&path), &c).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("# dlpp-lab v1\nx1,x2\n"));
        assert!(dir.path().join("pts.json").exists());
        let back = read_points(&path).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn points_without_sidecar() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pts.csv");
        std::fs::write(&path, "# dlpp-lab v1\nx1,x2\n1,2\n0.5,0.25\n").unwrap();
        let c = read_points(&path).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.points()[0], Point { x1: 0.5, x2: 0.25 });
    }

    #[test]
    fn malformed_points_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "x1,x2\n1,abc\n").unwrap();
        assert!(matches!(read_points(&path), Err(LabError::Format { .. })));
        std::fs::write(&path, "a,b\n1,2\n").unwrap();
        assert!(matches!(read_points(&path), Err(LabError::Format { .. })));
        assert!(matches!(read_points(&dir.path().join("missing.csv")), Err(LabError::Input { .. })));
    }

    #[test]
    fn network_csv_shape() {
        let c = sample_triangle(4.0, 1).unwrap();
        let net = build_network(&c, 4.0, NetworkOptions::default()).unwrap();
        let mut buf = Vec::new();
        let rows = net.edges().map(|(p, q, k)| {
            [p.x1.to_string(), p.x2.to_string(), q.x1.to_string(), q.x2.to_string(), k.as_str().to_string()]
        });
        write_csv(&mut buf, &["px1", "px2", "qx1", "qx2", "kind"], rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], FORMAT_LINE);
        assert_eq!(lines[1], "px1,px2,qx1,qx2,kind");
        assert_eq!(lines.len(), 2 + net.segments().len() + 2 * net.apexes().len());
        assert!(lines[2..].iter().all(|l| l.ends_with(",segment") || l.ends_with(",apex_ray")));
    }

    #[test]
    fn series_reader() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        let rows = [DensityRecord {
            t: 10.0,
            mu: 0.5,
            count: 7,
            seed: 1,
        }];
        write_density(Some(&path), &rows).unwrap();
        assert_eq!(read_series(&path, "count").unwrap(), vec![(10.0, 7.0)]);
        assert!(read_series(&path, "missing").is_err());
    }

    #[test]
    fn unwritable_output() {
        let r = emit_text(Some(Path::new("/nonexistent-dir/x.csv")), "x");
        assert!(matches!(r, Err(LabError::Output { .. })));
    }
}
