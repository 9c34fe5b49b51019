//! Snapshot and result CSV files.
//!
//! Snapshot files are time-first by default: one row per sample, column 0
//! the time, columns 1..=M the state values. An optional header row is
//! recognized by a non-numeric first field. Numbers are written with 17
//! significant digits so a write/read cycle is lossless.

use std::io::{Read, Write};
use std::path::Path;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::types::{Complex64, SnapshotSet, TimeGrid};

/// Orientation of a snapshot CSV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum CsvLayout {
    /// One row per time sample: `t, x_1, ..., x_M`.
    #[default]
    TimeRows,
    /// First row holds the times, every further row one state variable.
    StateRows,
}

/// Format with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_field(field: &str, row: usize, col: usize) -> Result<f64> {
    let trimmed = field.trim();
    trimmed.parse::<f64>().map_err(|_| Error::Parse {
        row,
        col,
        msg: format!("not a number: {trimmed:?}"),
    })
}

fn read_records<R: Read>(reader: R) -> Result<Vec<csv::StringRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let row = e.position().map(|p| p.line() as usize).unwrap_or(0);
            Error::Parse {
                row,
                col: 0,
                msg: e.to_string(),
            }
        })?;
        if rec.iter().all(|f| f.is_empty()) {
            continue;
        }
        out.push(rec);
    }
    Ok(out)
}

fn looks_numeric(field: &str) -> bool {
    field.trim().parse::<f64>().is_ok()
}

/// Read snapshots from any reader. Rows and columns in errors are 1-based.
pub fn read_snapshots<R: Read>(reader: R, layout: CsvLayout) -> Result<SnapshotSet> {
    let records = read_records(reader)?;
    match layout {
        CsvLayout::TimeRows => read_time_rows(&records),
        CsvLayout::StateRows => read_state_rows(&records),
    }
}

fn read_time_rows(records: &[csv::StringRecord]) -> Result<SnapshotSet> {
    let skip = usize::from(records.first().is_some_and(|r| !looks_numeric(&r[0])));
    let body = &records[skip..];
    let Some(first) = body.first() else {
        return Err(Error::Parse {
            row: skip + 1,
            col: 1,
            msg: "no data rows".into(),
        });
    };
    let width = first.len();
    if width < 2 {
        return Err(Error::Parse {
            row: skip + 1,
            col: 2,
            msg: "need a time column and at least one state column".into(),
        });
    }
    let mut rows: Vec<(f64, Vec<f64>)> = Vec::with_capacity(body.len());
    for (k, rec) in body.iter().enumerate() {
        let row = skip + k + 1;
        if rec.len() != width {
            return Err(Error::Parse {
                row,
                col: rec.len().min(width) + 1,
                msg: format!("expected {width} fields, found {}", rec.len()),
            });
        }
        let t = parse_field(&rec[0], row, 1)?;
        let vals = (1..width)
            .map(|c| parse_field(&rec[c], row, c + 1))
            .collect::<Result<Vec<_>>>()?;
        rows.push((t, vals));
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    if let Some(w) = rows.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::DuplicateTime { t: w[0].0 });
    }
    let times: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let m = width - 1;
    let x = DMatrix::from_fn(m, rows.len(), |i, n| rows[n].1[i]);
    SnapshotSet::new(TimeGrid::new(times)?, x)
}

fn read_state_rows(records: &[csv::StringRecord]) -> Result<SnapshotSet> {
    let Some(first) = records.first() else {
        return Err(Error::Parse {
            row: 1,
            col: 1,
            msg: "empty file".into(),
        });
    };
    let offset = usize::from(!looks_numeric(&first[0]));
    let width = first.len();
    let n = width - offset;
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(records.len());
    for (k, rec) in records.iter().enumerate() {
        if rec.len() != width {
            return Err(Error::Parse {
                row: k + 1,
                col: rec.len().min(width) + 1,
                msg: format!("expected {width} fields, found {}", rec.len()),
            });
        }
        let vals = (offset..width)
            .map(|c| parse_field(&rec[c], k + 1, c + 1))
            .collect::<Result<Vec<_>>>()?;
        table.push(vals);
    }
    if table.len() < 2 {
        return Err(Error::Parse {
            row: 2,
            col: 1,
            msg: "need a time row and at least one state row".into(),
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| table[0][a].total_cmp(&table[0][b]));
    if let Some(w) = order.windows(2).find(|w| table[0][w[0]] == table[0][w[1]]) {
        return Err(Error::DuplicateTime { t: table[0][w[0]] });
    }
    let times: Vec<f64> = order.iter().map(|&k| table[0][k]).collect();
    let x = DMatrix::from_fn(table.len() - 1, n, |i, c| table[i + 1][order[c]]);
    SnapshotSet::new(TimeGrid::new(times)?, x)
}

pub fn load_snapshots_csv(path: impl AsRef<Path>, layout: CsvLayout) -> Result<SnapshotSet> {
    let file = std::fs::File::open(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    read_snapshots(std::io::BufReader::new(file), layout)
}

/// Time-first CSV with header `t,x0,...,x{M-1}`.
pub fn write_snapshots<W: Write>(mut out: W, snapshots: &SnapshotSet) -> Result<()> {
    write_time_table(&mut out, snapshots.times(), snapshots.data())
}

pub(crate) fn write_time_table<W: Write>(out: &mut W, times: &[f64], x: &DMatrix<f64>) -> Result<()> {
    let header: Vec<String> = std::iter::once("t".to_string())
        .chain((0..x.nrows()).map(|m| format!("x{m}")))
        .collect();
    writeln!(out, "{}", header.join(","))?;
    for (n, &t) in times.iter().enumerate() {
        let row: Vec<String> = std::iter::once(fmt_f64(t))
            .chain(x.column(n).iter().map(|&v| fmt_f64(v)))
            .collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

/// Spectrum as `index,re,im`, in the order given.
pub fn write_spectrum<W: Write>(mut out: W, eigenvalues: &[Complex64]) -> Result<()> {
    writeln!(out, "index,re,im")?;
    for (k, z) in eigenvalues.iter().enumerate() {
        writeln!(out, "{k},{},{}", fmt_f64(z.re), fmt_f64(z.im))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_row_file() {
        let s = read_snapshots("0,1,0\n0.5,0.9,0.1\n".as_bytes(), CsvLayout::TimeRows).unwrap();
        assert_eq!(s.n_states(), 2);
        assert_eq!(s.n_samples(), 2);
        assert_eq!(s.data()[(1, 1)], 0.1);
    }

    #[test]
    fn header_and_unsorted_rows() {
        let text = "time,a\n2,20\n0,0\n1,10\n";
        let s = read_snapshots(text.as_bytes(), CsvLayout::TimeRows).unwrap();
        assert_eq!(s.times(), &[0.0, 1.0, 2.0]);
        assert_eq!(s.data().row(0).iter().copied().collect::<Vec<_>>(), vec![0.0, 10.0, 20.0]);
    }

    #[test]
    fn duplicate_times() {
        let err = read_snapshots("0,1\n1,2\n1,3\n".as_bytes(), CsvLayout::TimeRows).unwrap_err();
        assert_eq!(err, Error::DuplicateTime { t: 1.0 });
    }

    #[test]
    fn bad_number_located() {
        let err = read_snapshots("t,x\n0,1\n1,abc\n".as_bytes(), CsvLayout::TimeRows).unwrap_err();
        assert!(matches!(err, Error::Parse { row: 3, col: 2, .. }), "{err:?}");
    }

    #[test]
    fn ragged_row() {
        let err = read_snapshots("0,1,2\n1,2\n".as_bytes(), CsvLayout::TimeRows).unwrap_err();
        assert!(matches!(err, Error::Parse { row: 2, .. }));
    }

    #[test]
    fn state_rows_layout() {
        let text = "t,0,1,2\na,1,2,3\nb,4,5,6\n";
        let s = read_snapshots(text.as_bytes(), CsvLayout::StateRows).unwrap();
        assert_eq!(s.n_states(), 2);
        assert_eq!(s.n_samples(), 3);
        assert_eq!(s.data()[(1, 2)], 6.0);
        let plain = read_snapshots("0,1\n5,6\n".as_bytes(), CsvLayout::StateRows).unwrap();
        assert_eq!(plain.times(), &[0.0, 1.0]);
    }

    #[test]
    fn spectrum_format() {
        let mut buf = Vec::new();
        write_spectrum(&mut buf, &[Complex64::new(-0.05, 3.5)]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "index,re,im\n0,-5.0000000000000003e-2,3.5000000000000000e0\n");
    }
}
