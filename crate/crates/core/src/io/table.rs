//! Error tables and benchmark reports.
//!
//! Both are whitespace-separated columns under a header line, with `#`
//! comment lines allowed anywhere and `-` for an absent value.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::experiments::{ErrorRow, ErrorTable};

pub const ERROR_TABLE_COLUMNS: &str = "n l1_u l1_v l1_phi eoc_u eoc_v eoc_phi";
pub const BENCH_COLUMNS: &str = "case scheme k n seconds l1_u l1_v l1_phi";

fn opt(v: Option<f64>, prec: usize) -> String {
    match v {
        Some(x) => format!("{x:.prec$e}"),
        None => "-".into(),
    }
}

fn eoc_cell(v: Option<f64>) -> String {
    v.map_or_else(|| "-".into(), |x| format!("{x:.3}"))
}

/// The table under a header line; `comments` become leading `#` lines.
pub fn format_error_table(table: &ErrorTable, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "{ERROR_TABLE_COLUMNS}");
    let (eu, ev, ep) = (table.eoc_u(), table.eoc_v(), table.eoc_phi());
    for (m, r) in table.rows.iter().enumerate() {
        let prev = |col: &[f64]| (m > 0).then(|| col[m - 1]);
        let _ = writeln!(
            out,
            "{} {:.9e} {:.9e} {} {} {} {}",
            r.n,
            r.l1_u,
            r.l1_v,
            opt(r.l1_phi, 9),
            eoc_cell(prev(&eu)),
            eoc_cell(prev(&ev)),
            eoc_cell(ep.as_deref().and_then(prev)),
        );
    }
    out
}

fn data_lines<'a>(text: &'a str, header: &str) -> Result<Vec<(usize, Vec<&'a str>)>> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    match lines.next() {
        Some((_, h)) if h.split_whitespace().eq(header.split_whitespace()) => {}
        Some((n, _)) => {
            return Err(Error::Dump {
                line: n + 1,
                msg: format!("expected header '{header}'"),
            })
        }
        None => {
            return Err(Error::Dump {
                line: 0,
                msg: "empty table".into(),
            })
        }
    }
    let width = header.split_whitespace().count();
    lines
        .map(|(n, l)| {
            let cols: Vec<&str> = l.split_whitespace().collect();
            if cols.len() == width {
                Ok((n + 1, cols))
            } else {
                Err(Error::Dump {
                    line: n + 1,
                    msg: format!("expected {width} columns, found {}", cols.len()),
                })
            }
        })
        .collect()
}

fn cell<T: std::str::FromStr>(s: &str, line: usize) -> Result<T> {
    s.parse().map_err(|_| Error::Dump {
        line,
        msg: format!("bad value '{s}'"),
    })
}

fn opt_cell(s: &str, line: usize) -> Result<Option<f64>> {
    if s == "-" {
        Ok(None)
    } else {
        cell(s, line).map(Some)
    }
}

/// Reads the error columns back; the EOC columns are recomputed on demand.
pub fn parse_error_table(text: &str) -> Result<ErrorTable> {
    let rows = data_lines(text, ERROR_TABLE_COLUMNS)?
        .into_iter()
        .map(|(line, c)| {
            Ok(ErrorRow {
                n: cell(c[0], line)?,
                l1_u: cell(c[1], line)?,
                l1_v: cell(c[2], line)?,
                l1_phi: opt_cell(c[3], line)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ErrorTable { rows })
}

/// Wall time of one run alongside its errors.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub case: String,
    pub scheme: String,
    pub k: usize,
    pub n: usize,
    pub seconds: f64,
    pub errors: Option<ErrorRow>,
}

pub fn format_bench_table(rows: &[BenchRow]) -> String {
    let mut out = format!("{BENCH_COLUMNS}\n");
    for r in rows {
        let e = r.errors.as_ref();
        let _ = writeln!(
            out,
            "{} {} {} {} {:.6} {} {} {}",
            r.case,
            r.scheme,
            r.k,
            r.n,
            r.seconds,
            opt(e.map(|e| e.l1_u), 9),
            opt(e.map(|e| e.l1_v), 9),
            opt(e.and_then(|e| e.l1_phi), 9),
        );
    }
    out
}

pub fn parse_bench_table(text: &str) -> Result<Vec<BenchRow>> {
    data_lines(text, BENCH_COLUMNS)?
        .into_iter()
        .map(|(line, c)| {
            let n = cell(c[3], line)?;
            let l1_u = opt_cell(c[5], line)?;
            let l1_v = opt_cell(c[6], line)?;
            Ok(BenchRow {
                case: c[0].to_string(),
                scheme: c[1].to_string(),
                k: cell(c[2], line)?,
                n,
                seconds: cell(c[4], line)?,
                errors: match (l1_u, l1_v) {
                    (Some(l1_u), Some(l1_v)) => Some(ErrorRow {
                        n,
                        l1_u,
                        l1_v,
                        l1_phi: opt_cell(c[7], line)?,
                    }),
                    _ => None,
                },
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dirichlet_rows() -> ErrorTable {
        ErrorTable {
            rows: vec![
                ErrorRow {
                    n: 16,
                    l1_u: 0.000505,
                    l1_v: 0.000505,
                    l1_phi: None,
                },
                ErrorRow {
                    n: 32,
                    l1_u: 2.07e-5,
                    l1_v: 2.07e-5,
                    l1_phi: None,
                },
                ErrorRow {
                    n: 64,
                    l1_u: 5.29e-7,
                    l1_v: 5.29e-7,
                    l1_phi: None,
                },
            ],
        }
    }

    #[test]
    fn error_table_layout() {
        let text = format_error_table(&dirichlet_rows(), &["case = dirichlet_manufactured".into()]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# case = dirichlet_manufactured");
        assert_eq!(lines[1], ERROR_TABLE_COLUMNS);
        assert_eq!(lines[2], "16 5.050000000e-4 5.050000000e-4 - - - -");
        assert_eq!(lines[3], "32 2.070000000e-5 2.070000000e-5 - 4.609 4.609 -");
        assert_eq!(lines[4], "64 5.290000000e-7 5.290000000e-7 - 5.290 5.290 -");
    }

    #[test]
    fn error_table_round_trip() {
        let mut t = dirichlet_rows();
        t.rows[0].l1_phi = Some(0.563);
        t.rows[1].l1_phi = Some(0.0497);
        t.rows[2].l1_phi = Some(0.00198);
        let back = parse_error_table(&format_error_table(&t, &[])).unwrap();
        assert_eq!(back, t);
        assert!(back.eoc_phi().is_some());
    }

    #[test]
    fn malformed_tables_fail() {
        assert!(parse_error_table("").is_err());
        assert!(parse_error_table("n l1_u\n16 1e-3\n").is_err());
        let text = format_error_table(&dirichlet_rows(), &[]);
        assert!(parse_error_table(
            &text.replace("5.290000000e-7 5.290000000e-7", "x 5.290000000e-7")
        )
        .is_err());
        assert!(parse_error_table(&format!("{text}32 1e-3\n")).is_err());
    }

    #[test]
    fn bench_round_trip() {
        let rows = vec![
            BenchRow {
                case: "taylor_vortex".into(),
                scheme: "hiweno".into(),
                k: 3,
                n: 36,
                seconds: 1.25,
                errors: Some(ErrorRow {
                    n: 36,
                    l1_u: 1.67e-3,
                    l1_v: 1.5e-3,
                    l1_phi: None,
                }),
            },
            BenchRow {
                case: "vortex_patch".into(),
                scheme: "morinishi6".into(),
                k: 3,
                n: 128,
                seconds: 0.5,
                errors: None,
            },
        ];
        let text = format_bench_table(&rows);
        assert!(text.starts_with(BENCH_COLUMNS));
        assert_eq!(parse_bench_table(&text).unwrap(), rows);
    }
}
