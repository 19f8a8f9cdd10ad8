//! Text, JSON, CSV and LaTeX renderings of coset tables and power tables.

use std::fmt::Write as _;

use serde::Serialize;

use crate::steenrod::SteenrodTable;
use crate::weyl::CosetTable;

pub const JSON_SCHEMA_VERSION: u32 = 1;

fn class_label(cosets: &CosetTable, id: usize) -> String {
    let (r, i) = cosets.label(id);
    format!("s_{{{r},{i}}}")
}

fn element_label(cosets: &CosetTable, id: usize) -> String {
    let (r, i) = cosets.label(id);
    format!("w_{{{r},{i}}}")
}

fn sigma_word(word: &[usize]) -> String {
    word.iter().map(|i| format!("σ{}", i + 1)).collect()
}

fn operation(p: u32, k: u32) -> String {
    if p == 2 {
        format!("Sq^{}", 2 * k)
    } else {
        format!("P^{k} (p={p})")
    }
}

fn operation_latex(p: u32, k: u32) -> String {
    if p == 2 {
        format!("$Sq^{{{}}}$", 2 * k)
    } else {
        format!("$\\mathcal{{P}}^{{{k}}}$ ($p={p}$)")
    }
}

#[derive(Serialize)]
struct Context<'a> {
    #[serde(rename = "type")]
    lie_type: Option<&'a str>,
    cartan_matrix: &'a [Vec<i64>],
    parabolic: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    operations: Vec<OperationSet>,
}

#[derive(Serialize)]
struct OperationSet {
    p: u32,
    k: Vec<u32>,
}

#[derive(Serialize)]
struct JsonElement {
    label: String,
    word: Vec<usize>,
    image: Vec<i64>,
}

#[derive(Serialize)]
struct JsonGrade {
    length: usize,
    elements: Vec<JsonElement>,
}

#[derive(Serialize)]
struct JsonCoefficient {
    p: u32,
    k: u32,
    u_label: String,
    w_label: String,
    value: u32,
}

#[derive(Serialize)]
struct JsonDocument<'a> {
    schema_version: u32,
    context: Context<'a>,
    grades: Vec<JsonGrade>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coefficients: Option<Vec<JsonCoefficient>>,
}

fn context<'a>(cosets: &'a CosetTable, tables: &[SteenrodTable]) -> Context<'a> {
    Context {
        lie_type: cosets.cartan().name(),
        cartan_matrix: cosets.cartan().matrix(),
        parabolic: cosets.parabolic().iter().map(|j| j + 1).collect(),
        operations: tables.iter().map(|t| OperationSet { p: t.prime(), k: t.ks().iter().copied().collect() }).collect(),
    }
}

fn grades(cosets: &CosetTable) -> Vec<JsonGrade> {
    (0..=cosets.top_length())
        .map(|r| JsonGrade {
            length: r,
            elements: cosets
                .grade_ids(r)
                .map(|id| {
                    let e = cosets.element(id);
                    JsonElement {
                        label: element_label(cosets, id),
                        word: e.word.iter().map(|i| i + 1).collect(),
                        image: e.image.0.clone(),
                    }
                })
                .collect(),
        })
        .collect()
}

/// Every `(p, k, u, w)` with compatible lengths, zeros included.
fn all_coefficients(cosets: &CosetTable, tables: &[SteenrodTable]) -> Vec<JsonCoefficient> {
    let mut out = Vec::new();
    for t in tables {
        for &k in t.ks() {
            for u in 0..cosets.total_size() {
                let Some(d) = t.target_length(k, u) else { continue };
                for w in cosets.grade_ids(d) {
                    out.push(JsonCoefficient {
                        p: t.prime(),
                        k,
                        u_label: class_label(cosets, u),
                        w_label: class_label(cosets, w),
                        value: t.coefficient(k, u, w).unwrap_or(0),
                    });
                }
            }
        }
    }
    out
}

pub fn basis_text(cosets: &CosetTable) -> String {
    let mut s = String::new();
    for id in 1..cosets.total_size() {
        writeln!(s, "{}: {}", element_label(cosets, id), sigma_word(&cosets.element(id).word)).unwrap();
    }
    s
}

pub fn basis_json(cosets: &CosetTable) -> String {
    let doc = JsonDocument {
        schema_version: JSON_SCHEMA_VERSION,
        context: context(cosets, &[]),
        grades: grades(cosets),
        coefficients: None,
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

pub fn basis_csv(cosets: &CosetTable) -> String {
    let mut s = String::from("label,length,word\n");
    for id in 0..cosets.total_size() {
        let e = cosets.element(id);
        let word: Vec<String> = e.word.iter().map(|i| (i + 1).to_string()).collect();
        writeln!(s, "{},{},{}", element_label(cosets, id), e.length(), word.join(" ")).unwrap();
    }
    s
}

pub fn basis_latex(cosets: &CosetTable) -> String {
    let mut s = String::from("\\begin{tabular}{|l|l|}\n\\hline\n$w_{r,i}$ & decomposition \\\\ \\hline\n");
    for id in 1..cosets.total_size() {
        let word: String = cosets.element(id).word.iter().map(|i| format!("\\sigma_{{{}}}", i + 1)).collect();
        writeln!(s, "${}$ & ${word}$ \\\\ \\hline", element_label(cosets, id)).unwrap();
    }
    s.push_str("\\end{tabular}\n");
    s
}

/// Rows with at least one nonzero entry across all tables, in coset order.
fn nontrivial_rows(tables: &[SteenrodTable]) -> Vec<usize> {
    let mut rows: Vec<usize> = tables.iter().flat_map(|t| t.nontrivial_rows()).collect();
    rows.sort_unstable();
    rows.dedup();
    rows
}

fn columns(tables: &[SteenrodTable]) -> Vec<(usize, u32)> {
    tables.iter().enumerate().flat_map(|(n, t)| t.ks().iter().map(move |&k| (n, k))).collect()
}

/// Empty when no class of the target length exists, `0` when the image
/// vanishes, else the terms in coset order.
fn cell(cosets: &CosetTable, t: &SteenrodTable, k: u32, u: usize, latex: bool) -> String {
    if t.target_length(k, u).is_none() {
        return String::new();
    }
    let terms = t.expansion(k, u);
    if terms.is_empty() {
        return if latex { "$0$".into() } else { "0".into() };
    }
    let parts: Vec<String> = terms
        .into_iter()
        .map(|(w, c)| {
            let l = class_label(cosets, w);
            match (c, latex) {
                (1, _) => l,
                (c, false) => format!("{c} {l}"),
                (c, true) => format!("{c}\\,{l}"),
            }
        })
        .collect();
    if latex {
        format!("${}$", parts.join(" + "))
    } else {
        parts.join(" + ")
    }
}

pub const NO_ACTIONS: &str = "no nontrivial actions";

pub fn steenrod_text(cosets: &CosetTable, tables: &[SteenrodTable]) -> String {
    let rows = nontrivial_rows(tables);
    if rows.is_empty() {
        return format!("{NO_ACTIONS}\n");
    }
    let cols = columns(tables);
    let mut s = String::from("s_{r,i}");
    for &(n, k) in &cols {
        write!(s, " | {}", operation(tables[n].prime(), k)).unwrap();
    }
    s.push('\n');
    for u in rows {
        let mut line = class_label(cosets, u);
        for &(n, k) in &cols {
            write!(line, " | {}", cell(cosets, &tables[n], k, u, false)).unwrap();
        }
        s.push_str(line.trim_end());
        s.push('\n');
    }
    s
}

pub fn steenrod_json(cosets: &CosetTable, tables: &[SteenrodTable]) -> String {
    let doc = JsonDocument {
        schema_version: JSON_SCHEMA_VERSION,
        context: context(cosets, tables),
        grades: grades(cosets),
        coefficients: Some(all_coefficients(cosets, tables)),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

pub fn steenrod_csv(cosets: &CosetTable, tables: &[SteenrodTable]) -> String {
    let mut s = String::from("p,k,u_label,w_label,value\n");
    for c in all_coefficients(cosets, tables) {
        writeln!(s, "{},{},{},{},{}", c.p, c.k, c.u_label, c.w_label, c.value).unwrap();
    }
    s
}

pub fn steenrod_latex(cosets: &CosetTable, tables: &[SteenrodTable]) -> String {
    let rows = nontrivial_rows(tables);
    if rows.is_empty() {
        return format!("% {NO_ACTIONS}\n");
    }
    let cols = columns(tables);
    let mut s = format!("\\begin{{tabular}}{{|l|{}}}\n\\hline\n$s_{{r,i}}$", "l|".repeat(cols.len()));
    for &(n, k) in &cols {
        write!(s, " & {}", operation_latex(tables[n].prime(), k)).unwrap();
    }
    s.push_str(" \\\\ \\hline\n");
    for u in rows {
        write!(s, "${}$", class_label(cosets, u)).unwrap();
        for &(n, k) in &cols {
            write!(s, " & {}", cell(cosets, &tables[n], k, u, true)).unwrap();
        }
        s.push_str(" \\\\ \\hline\n");
    }
    s.push_str("\\end{tabular}\n");
    s
}
