//! Fixtures shared by the integration tests: the four worked examples, the
//! transcribed tables under `tests/golden`, and a cell-level reader for the
//! text layout the CLI prints.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;

use flag_steenrod::{steenrod_table, CartanData, CosetTable, EnumerateOptions, SteenrodTable};

/// One printed power table: a golden file and the CLI flags that produce it.
pub struct TableSpec {
    pub golden: &'static str,
    pub primes: &'static str,
    pub k: &'static str,
}

pub struct Example {
    pub name: &'static str,
    pub lie_type: &'static str,
    /// 1-based, as on the command line.
    pub parabolic: &'static str,
    pub size: usize,
    pub basis: &'static str,
    pub tables: &'static [TableSpec],
    /// Time limit for enumeration plus every table, single-threaded.
    pub seconds: f64,
}

pub const EXAMPLES: [Example; 4] = [
    Example {
        name: "G2/T",
        lie_type: "G2",
        parabolic: "",
        size: 12,
        basis: "g2_basis.txt",
        tables: &[TableSpec { golden: "g2_steenrod.txt", primes: "3,5", k: "1" }],
        seconds: 1.0,
    },
    Example {
        name: "F4/(Spin(7)xS^1)",
        lie_type: "F4",
        parabolic: "2,3,4",
        size: 24,
        basis: "f4_basis.txt",
        tables: &[TableSpec { golden: "f4_steenrod.txt", primes: "3,5,7", k: "3=1..2,5=1..3,7=1..2" }],
        seconds: 30.0,
    },
    Example {
        name: "D6/(U(6))",
        lie_type: "D6",
        parabolic: "1,2,3,4,5",
        size: 32,
        basis: "d6_basis.txt",
        tables: &[
            TableSpec { golden: "d6_steenrod_p3.txt", primes: "3", k: "1..5" },
            TableSpec { golden: "d6_steenrod_p5.txt", primes: "5", k: "1..3" },
        ],
        seconds: 60.0,
    },
    Example {
        name: "A6/(S(U(3)xU(4)))",
        lie_type: "A6",
        parabolic: "1,2,4,5,6",
        size: 35,
        basis: "a6_basis.txt",
        tables: &[
            TableSpec { golden: "a6_steenrod_p3.txt", primes: "3", k: "1..4" },
            TableSpec { golden: "a6_steenrod_p5.txt", primes: "5", k: "1..2" },
        ],
        seconds: 60.0,
    },
];

/// Why a transcribed cell differs from what the engine prints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Why {
    /// Blank versus `0`; the printed convention is blank exactly when no
    /// class of the target degree exists.
    Presentation,
    /// The engine value is forced by `P^1 P^1 = 2 P^2` applied to the
    /// table's own `P^1` column.
    Adem,
    /// The engine value agrees with the type A oracle.
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Deviation {
    pub golden: &'static str,
    pub row: &'static str,
    pub column: &'static str,
    pub printed: &'static str,
    pub computed: &'static str,
    pub why: Why,
}

const fn dev(golden: &'static str, row: &'static str, column: &'static str, printed: &'static str, computed: &'static str, why: Why) -> Deviation {
    Deviation { golden, row, column, printed, computed, why }
}

/// Every cell where a transcribed table and the engine disagree.
pub const DEVIATIONS: [Deviation; 13] = [
    dev("g2_steenrod.txt", "s_{3,1}", "P^1 (p=5)", "0", "", Why::Presentation),
    dev("f4_steenrod.txt", "s_{4,1}", "P^2 (p=5)", "0", "4 s_{12,1}", Why::Adem),
    dev("f4_steenrod.txt", "s_{4,2}", "P^2 (p=5)", "0", "4 s_{12,1}", Why::Adem),
    dev("f4_steenrod.txt", "s_{5,1}", "P^2 (p=5)", "0", "s_{13,1}", Why::Adem),
    dev("f4_steenrod.txt", "s_{5,2}", "P^2 (p=5)", "0", "2 s_{13,1}", Why::Adem),
    dev("f4_steenrod.txt", "s_{6,1}", "P^2 (p=5)", "0", "4 s_{14,1}", Why::Adem),
    dev("f4_steenrod.txt", "s_{6,2}", "P^2 (p=5)", "0", "4 s_{14,1}", Why::Adem),
    dev("f4_steenrod.txt", "s_{7,1}", "P^2 (p=5)", "0", "4 s_{15,1}", Why::Adem),
    dev("f4_steenrod.txt", "s_{7,2}", "P^2 (p=5)", "0", "4 s_{15,1}", Why::Adem),
    dev("d6_steenrod_p3.txt", "s_{7,3}", "P^4 (p=3)", "", "0", Why::Presentation),
    dev("d6_steenrod_p5.txt", "s_{2,1}", "P^2 (p=5)", "0", "4 s_{10,1} + s_{10,2} + 2 s_{10,3}", Why::Adem),
    dev("a6_steenrod_p3.txt", "s_{4,1}", "P^2 (p=3)", "s_{8,1} + 2 s_{8,2} + 2 s_{8,3}", "2 s_{8,1} + 2 s_{8,2} + 2 s_{8,3}", Why::Oracle),
    dev("a6_steenrod_p3.txt", "s_{8,4}", "P^2 (p=3)", "", "0", Why::Presentation),
];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

pub fn golden(name: &str) -> String {
    std::fs::read_to_string(golden_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub struct CliOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn cli(args: &[&str]) -> CliOutput {
    let out = Command::new(env!("CARGO_BIN_EXE_flag-steenrod")).args(args).output().expect("binary runs");
    CliOutput {
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
        code: out.status.code().unwrap_or(-1),
    }
}

pub fn basis_args(ex: &Example) -> Vec<&'static str> {
    vec!["basis", "--type", ex.lie_type, "--parabolic", ex.parabolic]
}

pub fn table_args(ex: &Example, t: &TableSpec) -> Vec<&'static str> {
    vec!["steenrod", "--type", ex.lie_type, "--parabolic", ex.parabolic, "--prime", t.primes, "--k", t.k]
}

/// A power table in the CLI text layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextTable {
    pub header: Vec<String>,
    pub rows: Vec<(String, Vec<String>)>,
}

impl TextTable {
    pub fn parse(text: &str) -> TextTable {
        let mut lines = text.lines();
        let split = |l: &str| l.split('|').map(|c| c.trim().to_string()).collect::<Vec<_>>();
        let header = split(lines.next().expect("header"));
        let width = header.len() - 1;
        let rows = lines
            .map(|l| {
                let mut cells = split(l);
                let label = cells.remove(0);
                cells.resize(width, String::new());
                (label, cells)
            })
            .collect();
        TextTable { header, rows }
    }

    pub fn render(&self) -> String {
        let mut s = self.header.join(" | ") + "\n";
        for (label, cells) in &self.rows {
            let mut line = label.clone();
            for c in cells {
                line.push_str(" | ");
                line.push_str(c);
            }
            s.push_str(line.trim_end());
            s.push('\n');
        }
        s
    }

    pub fn column(&self, name: &str) -> usize {
        self.header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}")) - 1
    }

    pub fn cell(&self, row: &str, column: &str) -> Option<&str> {
        let c = self.column(column);
        self.rows.iter().find(|(l, _)| l == row).map(|(_, cells)| cells[c].as_str())
    }

    pub fn set(&mut self, row: &str, column: &str, value: &str) {
        let c = self.column(column);
        let (_, cells) = self.rows.iter_mut().find(|(l, _)| l == row).unwrap_or_else(|| panic!("no row {row}"));
        cells[c] = value.to_string();
    }

    /// `(row, column, left, right)` for every differing cell; the two tables
    /// must share header and row labels.
    pub fn diff(&self, other: &TextTable) -> Vec<(String, String, String, String)> {
        assert_eq!(self.header, other.header, "headers differ");
        let labels = |t: &TextTable| t.rows.iter().map(|(l, _)| l.clone()).collect::<Vec<_>>();
        assert_eq!(labels(self), labels(other), "row labels differ");
        let mut out = Vec::new();
        for ((label, a), (_, b)) in self.rows.iter().zip(&other.rows) {
            for (j, (x, y)) in a.iter().zip(b).enumerate() {
                if x != y {
                    out.push((label.clone(), self.header[j + 1].clone(), x.clone(), y.clone()));
                }
            }
        }
        out
    }
}

/// `(r, i)` from `s_{r,i}` or `w_{r,i}`.
pub fn parse_label(label: &str) -> (usize, usize) {
    let inner = label.trim().get(3..label.trim().len() - 1).unwrap_or_else(|| panic!("bad label {label}"));
    let (r, i) = inner.split_once(',').unwrap_or_else(|| panic!("bad label {label}"));
    (r.parse().unwrap(), i.parse().unwrap())
}

/// Terms of a cell such as `2 s_{8,1} + s_{8,2}`; `0` is the empty sum.
pub fn parse_cell(cell: &str) -> BTreeMap<(usize, usize), u32> {
    let mut out = BTreeMap::new();
    if cell == "0" || cell.is_empty() {
        return out;
    }
    for term in cell.split(" + ") {
        let (c, label) = match term.split_once(' ') {
            Some((c, l)) => (c.parse().unwrap(), l),
            None => (1, term),
        };
        out.insert(parse_label(label), c);
    }
    out
}

pub fn render_cell(terms: &BTreeMap<(usize, usize), u32>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|(&(r, i), &c)| if c == 1 { format!("s_{{{r},{i}}}") } else { format!("{c} s_{{{r},{i}}}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Primes and exponents of a table spec, as the CLI parses them.
pub fn spec_ks(t: &TableSpec) -> BTreeMap<u32, BTreeSet<u32>> {
    let primes: Vec<u32> = t.primes.split(',').map(|p| p.parse().unwrap()).collect();
    flag_steenrod::app::config::parse_k_spec(t.k, &primes).unwrap()
}

pub fn parabolic_set(ex: &Example) -> BTreeSet<usize> {
    ex.parabolic.split(',').filter(|s| !s.is_empty()).map(|s| s.parse::<usize>().unwrap() - 1).collect()
}

pub fn cosets(ex: &Example) -> Arc<CosetTable> {
    let c = CartanData::parse_type(ex.lie_type).unwrap();
    Arc::new(CosetTable::enumerate(&c, &parabolic_set(ex), EnumerateOptions::default()).unwrap())
}

pub fn tables(t: &Arc<CosetTable>, ks: &BTreeMap<u32, BTreeSet<u32>>) -> Vec<SteenrodTable> {
    ks.iter().map(|(&p, ks)| steenrod_table(t.clone(), p, ks).unwrap()).collect()
}

/// Grade sizes of a transcribed basis listing, identity included.
pub fn golden_grade_sizes(basis: &str) -> Vec<usize> {
    let mut sizes = vec![1];
    for line in basis.lines() {
        let (label, _) = line.split_once(':').expect("label: word");
        let (r, _) = parse_label(label);
        if sizes.len() <= r {
            sizes.resize(r + 1, 0);
        }
        sizes[r] += 1;
    }
    sizes
}
