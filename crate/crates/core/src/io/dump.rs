//! Plain-text field dumps.
//!
//! A dump is a `#` header followed by one `kind i j x y value` row per
//! interior node. Numbers carry 17 significant digits, so reading a dump
//! back reproduces every value bit for bit.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::cases::{CaseName, CaseSpec};
use crate::diagnostics::vorticity;
use crate::error::{Error, Result};
use crate::grid::{Bounds, Field, NodeKind, StaggeredGrid2D};
use crate::momentum::Scheme;
use crate::time::Simulation;

pub const DUMP_VERSION: u32 = 1;

/// Quantity stored in a dump.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DumpKind {
    U,
    V,
    Phi,
    P,
    Vort,
}

impl DumpKind {
    pub fn name(self) -> &'static str {
        match self {
            DumpKind::U => "u",
            DumpKind::V => "v",
            DumpKind::Phi => "phi",
            DumpKind::P => "p",
            DumpKind::Vort => "vort",
        }
    }

    pub fn node(self) -> NodeKind {
        match self {
            DumpKind::U => NodeKind::UFace,
            DumpKind::V => NodeKind::VFace,
            DumpKind::Phi | DumpKind::P | DumpKind::Vort => NodeKind::Center,
        }
    }
}

impl FromStr for DumpKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "u" => Ok(DumpKind::U),
            "v" => Ok(DumpKind::V),
            "phi" => Ok(DumpKind::Phi),
            "p" => Ok(DumpKind::P),
            "vort" => Ok(DumpKind::Vort),
            _ => Err(Error::Config(format!("unknown dump quantity '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DumpHeader {
    pub case: CaseName,
    pub scheme: Scheme,
    pub k: usize,
    pub nx: usize,
    pub ny: usize,
    pub bounds: Bounds,
    pub time: f64,
}

impl DumpHeader {
    pub fn for_simulation(sim: &Simulation) -> Self {
        let g = sim.grid();
        let scheme = sim.options().scheme;
        Self {
            case: sim.spec().name,
            scheme: scheme.scheme,
            k: scheme.k,
            nx: g.nx,
            ny: g.ny,
            bounds: g.bounds(),
            time: sim.time(),
        }
    }

    /// A halo-free grid matching the header.
    pub fn grid(&self) -> Result<StaggeredGrid2D> {
        crate::grid::build_grid(
            self.bounds,
            self.nx,
            self.ny,
            CaseSpec::get(self.case).bc,
            0,
        )
    }
}

/// Interior values of one quantity, row-major with `j` outermost.
#[derive(Clone, Debug, PartialEq)]
pub struct DumpedField {
    pub kind: DumpKind,
    pub values: Vec<f64>,
}

impl DumpedField {
    pub fn from_field(kind: DumpKind, field: &Field) -> Self {
        Self {
            kind,
            values: field.interior(),
        }
    }

    /// Copies the values into a field on `grid`; ghosts are zero.
    pub fn to_field(&self, grid: &StaggeredGrid2D) -> Result<Field> {
        let mut f = Field::zeros(grid, self.kind.node());
        f.set_interior(&self.values)?;
        Ok(f)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FieldDump {
    pub header: DumpHeader,
    pub fields: Vec<DumpedField>,
}

impl FieldDump {
    /// Velocities, the scalar and pressure when present, and optionally vorticity.
    pub fn from_simulation(sim: &Simulation, with_vorticity: bool) -> Self {
        let s = sim.state();
        let mut fields = vec![
            DumpedField::from_field(DumpKind::U, &s.u),
            DumpedField::from_field(DumpKind::V, &s.v),
        ];
        if let Some(phi) = &s.phi {
            fields.push(DumpedField::from_field(DumpKind::Phi, phi));
        }
        if let Some(p) = sim.pressure() {
            fields.push(DumpedField::from_field(DumpKind::P, p));
        }
        if with_vorticity {
            let w = vorticity(&s.u, &s.v, sim.grid());
            fields.push(DumpedField::from_field(DumpKind::Vort, &w));
        }
        Self {
            header: DumpHeader::for_simulation(sim),
            fields,
        }
    }

    pub fn get(&self, kind: DumpKind) -> Option<&DumpedField> {
        self.fields.iter().find(|f| f.kind == kind)
    }

    pub fn to_text(&self) -> Result<String> {
        let h = &self.header;
        let grid = h.grid()?;
        let b = h.bounds;
        let mut out = String::new();
        let w = &mut out;
        // Writing into a String cannot fail.
        let _ = writeln!(w, "# stagflow field dump");
        let _ = writeln!(w, "# format_version = {DUMP_VERSION}");
        let _ = writeln!(w, "# case = {}", h.case);
        let _ = writeln!(w, "# scheme = {}", h.scheme);
        let _ = writeln!(w, "# k = {}", h.k);
        let _ = writeln!(w, "# nx = {}", h.nx);
        let _ = writeln!(w, "# ny = {}", h.ny);
        let _ = writeln!(
            w,
            "# bounds = {:.16e} {:.16e} {:.16e} {:.16e}",
            b.xmin, b.xmax, b.ymin, b.ymax
        );
        let _ = writeln!(w, "# time = {:.16e}", h.time);
        let _ = writeln!(w, "# columns = kind i j x y value");
        for f in &self.fields {
            if f.values.len() != h.nx * h.ny {
                return Err(Error::LengthMismatch(format!(
                    "{} has {} values for a {}x{} grid",
                    f.kind.name(),
                    f.values.len(),
                    h.nx,
                    h.ny
                )));
            }
            for (m, v) in f.values.iter().enumerate() {
                let (i, j) = ((m % h.nx) as isize, (m / h.nx) as isize);
                let (x, y) = grid.coords(f.kind.node(), i, j);
                let _ = writeln!(w, "{} {i} {j} {x:.16e} {y:.16e} {v:.16e}", f.kind.name());
            }
        }
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut keys = std::collections::BTreeMap::new();
        let mut fields: Vec<DumpedField> = Vec::new();
        let mut header: Option<DumpHeader> = None;
        for (n, line) in text.lines().enumerate() {
            let lineno = n + 1;
            let err = |msg: String| Error::Dump { line: lineno, msg };
            if let Some(rest) = line.strip_prefix('#') {
                if let Some((k, v)) = rest.split_once('=') {
                    keys.insert(k.trim().to_string(), v.trim().to_string());
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let h = match header {
                Some(h) => h,
                None => {
                    let h = header_from(&keys).map_err(|m| err(m))?;
                    header = Some(h);
                    h
                }
            };
            let cols: Vec<&str> = line.split_whitespace().collect();
            if cols.len() != 6 {
                return Err(err(format!("expected 6 columns, found {}", cols.len())));
            }
            let kind: DumpKind = cols[0].parse().map_err(|e: Error| err(e.to_string()))?;
            let idx = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| err(format!("bad index '{s}'")))
            };
            let (i, j) = (idx(cols[1])?, idx(cols[2])?);
            let value: f64 = cols[5]
                .parse()
                .map_err(|_| err(format!("bad value '{}'", cols[5])))?;
            for c in &cols[3..5] {
                c.parse::<f64>()
                    .map_err(|_| err(format!("bad coordinate '{c}'")))?;
            }
            if fields.last().map_or(true, |f| f.kind != kind) {
                if fields.iter().any(|f| f.kind == kind) {
                    return Err(err(format!("rows of '{}' are not contiguous", kind.name())));
                }
                fields.push(DumpedField {
                    kind,
                    values: Vec::with_capacity(h.nx * h.ny),
                });
            }
            let f = fields.last_mut().expect("just pushed");
            let m = f.values.len();
            if i >= h.nx || j >= h.ny || (i, j) != (m % h.nx, m / h.nx) {
                return Err(err(format!(
                    "unexpected node ({i}, {j}) for '{}'",
                    kind.name()
                )));
            }
            f.values.push(value);
        }
        let header = match header {
            Some(h) => h,
            None => header_from(&keys).map_err(|msg| Error::Dump { line: 0, msg })?,
        };
        for f in &fields {
            if f.values.len() != header.nx * header.ny {
                return Err(Error::Dump {
                    line: 0,
                    msg: format!(
                        "'{}' has {} of {} rows",
                        f.kind.name(),
                        f.values.len(),
                        header.nx * header.ny
                    ),
                });
            }
        }
        Ok(Self { header, fields })
    }
}

fn header_from(
    keys: &std::collections::BTreeMap<String, String>,
) -> std::result::Result<DumpHeader, String> {
    let get = |k: &str| keys.get(k).ok_or_else(|| format!("header lacks '{k}'"));
    let version = get("format_version")?;
    if version.parse::<u32>() != Ok(DUMP_VERSION) {
        return Err(format!("format version {version} is not {DUMP_VERSION}"));
    }
    let num = |k: &str| -> std::result::Result<f64, String> {
        get(k)?.parse().map_err(|_| format!("bad '{k}'"))
    };
    let int = |k: &str| -> std::result::Result<usize, String> {
        get(k)?.parse().map_err(|_| format!("bad '{k}'"))
    };
    let b: Vec<f64> = get("bounds")?
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| "bad 'bounds'".to_string())?;
    if b.len() != 4 {
        return Err("'bounds' needs four numbers".into());
    }
    Ok(DumpHeader {
        case: get("case")?.parse().map_err(|e: Error| e.to_string())?,
        scheme: get("scheme")?.parse().map_err(|e: Error| e.to_string())?,
        k: int("k")?,
        nx: int("nx")?,
        ny: int("ny")?,
        bounds: Bounds::new(b[0], b[1], b[2], b[3]),
        time: num("time")?,
    })
}

pub fn write_field_dump(dump: &FieldDump, path: &Path) -> Result<()> {
    std::fs::write(path, dump.to_text()?)?;
    Ok(())
}

pub fn read_field_dump(path: &Path) -> Result<FieldDump> {
    FieldDump::parse(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::momentum::SchemeConfig;
    use crate::time::RunOptions;
    use proptest::prelude::*;

    fn sim(case: CaseName, n: usize) -> Simulation {
        let spec = CaseSpec::get(case);
        let opts = RunOptions::for_case(&spec, SchemeConfig::new(Scheme::HighOrderWeno, 2));
        Simulation::new(spec, n, n, opts).unwrap()
    }

    #[test]
    fn zero_state_rows() {
        let g = CaseSpec::get(CaseName::ShearLayer).grid(4, 4, 0).unwrap();
        let dump = FieldDump {
            header: DumpHeader {
                case: CaseName::ShearLayer,
                scheme: Scheme::Morinishi4,
                k: 2,
                nx: 4,
                ny: 4,
                bounds: g.bounds(),
                time: 0.0,
            },
            fields: vec![
                DumpedField::from_field(DumpKind::U, &Field::zeros(&g, NodeKind::UFace)),
                DumpedField::from_field(DumpKind::V, &Field::zeros(&g, NodeKind::VFace)),
            ],
        };
        let text = dump.to_text().unwrap();
        let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(rows.len(), 32);
        assert_eq!(rows.iter().filter(|r| r.starts_with("u ")).count(), 16);
        assert_eq!(rows.iter().filter(|r| r.starts_with("v ")).count(), 16);
        for r in rows {
            assert_eq!(
                r.split_whitespace().last().unwrap().parse::<f64>().unwrap(),
                0.0
            );
        }
    }

    #[test]
    fn simulation_dump_round_trips_bitwise() {
        let mut s = sim(CaseName::PassiveScalar, 16);
        s.step(1e-3).unwrap();
        let dump = FieldDump::from_simulation(&s, true);
        let kinds: Vec<DumpKind> = dump.fields.iter().map(|f| f.kind).collect();
        assert_eq!(
            kinds,
            [
                DumpKind::U,
                DumpKind::V,
                DumpKind::Phi,
                DumpKind::P,
                DumpKind::Vort
            ]
        );
        let back = FieldDump::parse(&dump.to_text().unwrap()).unwrap();
        assert_eq!(back.header.time.to_bits(), s.time().to_bits());
        assert_eq!(back.header, dump.header);
        for (a, b) in dump.fields.iter().zip(&back.fields) {
            assert_eq!(a.kind, b.kind);
            let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
            assert_eq!(bits(&a.values), bits(&b.values));
        }
        let g = back.header.grid().unwrap();
        let u = back.get(DumpKind::U).unwrap().to_field(&g).unwrap();
        assert_eq!(u.interior(), s.state().u.interior());
    }

    #[test]
    fn header_carries_run_metadata() {
        let s = sim(CaseName::Straka, 32);
        let text = FieldDump::from_simulation(&s, false).to_text().unwrap();
        for line in [
            "# format_version = 1",
            "# case = straka",
            "# scheme = hiweno",
            "# k = 2",
            "# nx = 32",
            "# ny = 32",
        ] {
            assert!(text.contains(line), "{line}");
        }
        assert!(text.contains("# bounds = -2.5600000000000000e4 2.5600000000000000e4 0.0000000000000000e0 6.4000000000000000e3"));
    }

    #[test]
    fn malformed_dumps_are_rejected() {
        let s = sim(CaseName::ShearLayer, 8);
        let text = FieldDump::from_simulation(&s, false).to_text().unwrap();
        let bad_version = text.replace("format_version = 1", "format_version = 2");
        assert!(matches!(
            FieldDump::parse(&bad_version),
            Err(Error::Dump { .. })
        ));
        let short_row = text.replacen("u 0 0 ", "u 0 ", 1);
        assert!(matches!(
            FieldDump::parse(&short_row),
            Err(Error::Dump { .. })
        ));
        let bad_value = text.replacen("\nu 1 0 ", "\nu 1 0 zz ", 1);
        assert!(FieldDump::parse(&bad_value).is_err());
        let truncated: String = text.lines().take(20).map(|l| format!("{l}\n")).collect();
        assert!(matches!(
            FieldDump::parse(&truncated),
            Err(Error::Dump { line: 0, .. })
        ));
        let bad_kind = text.replacen("\nv 0 0 ", "\nw 0 0 ", 1);
        assert!(FieldDump::parse(&bad_kind).is_err());
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.txt");
        let dump = FieldDump::from_simulation(&sim(CaseName::TaylorVortex, 12), false);
        write_field_dump(&dump, &path).unwrap();
        assert_eq!(read_field_dump(&path).unwrap(), dump);
    }

    proptest! {
        #[test]
        fn arbitrary_values_round_trip(vals in proptest::collection::vec(proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO | proptest::num::f64::INFINITE | proptest::num::f64::NEGATIVE | proptest::num::f64::POSITIVE, 16), t in proptest::num::f64::NORMAL) {
            let g = crate::grid::build_grid(Bounds::square(0.0, 1.0), 4, 4, crate::grid::BoundaryKind::PeriodicBoth, 0).unwrap();
            let dump = FieldDump {
                header: DumpHeader { case: CaseName::VortexPatch, scheme: Scheme::PresselWeno, k: 3, nx: 4, ny: 4, bounds: g.bounds(), time: t },
                fields: vec![DumpedField { kind: DumpKind::Vort, values: vals.clone() }],
            };
            let back = FieldDump::parse(&dump.to_text().unwrap()).unwrap();
            let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
            prop_assert_eq!(bits(&back.fields[0].values), bits(&vals));
            prop_assert_eq!(back.header.time.to_bits(), t.to_bits());
        }
    }
}
