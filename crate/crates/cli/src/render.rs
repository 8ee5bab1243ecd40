//! Text and JSON renderings. Both forms carry the same facts.

use std::fmt::Write;

use blocklab::chartab::CharacterTable;
use blocklab::verify::{CheckRegistry, VerificationReport};
use serde::Serialize;
use serde_json::Value;

use crate::sweep::SweepSummary;

#[derive(Serialize)]
struct TableOutput<'a> {
    group: &'a str,
    order: usize,
    degrees: Vec<u64>,
    table: blocklab::chartab::TableRecord,
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data");
    s.push('\n');
    s
}

pub fn table_json(name: &str, table: &CharacterTable) -> String {
    pretty(&TableOutput {
        group: name,
        order: table.group_order(),
        degrees: table.degrees(),
        table: table.to_record(),
    })
}

fn grid(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, w))| if i == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect();
        writeln!(s, "{}", cells.join("  ").trim_end()).unwrap();
    }
    s
}

pub fn table_text(name: &str, table: &CharacterTable) -> String {
    let record = table.to_record();
    let mut s = format!(
        "group {name}, order {}, exponent {}, {} classes\n\n",
        record.order,
        record.exponent,
        record.classes.len()
    );
    let mut rows = vec![
        std::iter::once("class".to_string()).chain((0..record.classes.len()).map(|k| k.to_string())).collect(),
        std::iter::once("order".to_string()).chain(record.classes.iter().map(|c| c.element_order.to_string())).collect(),
        std::iter::once("size".to_string()).chain(record.classes.iter().map(|c| c.size.to_string())).collect(),
    ];
    for (i, row) in record.characters.iter().enumerate() {
        rows.push(std::iter::once(format!("X.{i}")).chain(row.iter().cloned()).collect());
    }
    s.push_str(&grid(&rows));
    s
}

pub fn report_json(report: &VerificationReport) -> String {
    pretty(report)
}

fn compact(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn report_text(report: &VerificationReport) -> String {
    let mut s = String::new();
    let w = &mut s;
    writeln!(w, "group {}  order {}  p {}  seed {}", report.group, report.order, report.p, report.seed).unwrap();
    writeln!(w, "hypothesis C_G(P) = N_G(P): {}", if report.hypothesis_holds { "holds" } else { "fails" }).unwrap();
    writeln!(w, "sylow order: {}", report.sylow_order).unwrap();
    match report.normal_p_complement_order {
        Some(k) => writeln!(w, "normal p-complement order: {k}").unwrap(),
        None => writeln!(w, "normal p-complement order: none").unwrap(),
    }
    writeln!(w, "blocks:").unwrap();
    for (i, b) in report.blocks.iter().enumerate() {
        let members: Vec<String> = b
            .members
            .iter()
            .map(|m| format!("X.{} (degree {}, height {})", m.character, m.degree, m.height))
            .collect();
        let tag = if b.principal { " principal" } else { "" };
        writeln!(w, "  block {i}{tag}, defect {}: {}", b.defect, members.join(", ")).unwrap();
    }
    let cc = &report.classical_cross_check;
    writeln!(w, "classical cross-check: {} ({})", cc.status.as_str(), cc.detail).unwrap();
    writeln!(w, "checks:").unwrap();
    for c in &report.checks {
        writeln!(w, "  [{}] {}: {}", c.status.as_str(), c.id, c.summary).unwrap();
        for (k, v) in &c.witness {
            writeln!(w, "      {k} = {}", compact(v)).unwrap();
        }
    }
    writeln!(w, "result: {} records, {} failures", report.checks.len(), report.failures()).unwrap();
    s
}

pub fn sweep_json(summary: &SweepSummary) -> String {
    pretty(summary)
}

pub fn sweep_text(summary: &SweepSummary) -> String {
    let mut rows = vec![std::iter::once("group".to_string())
        .chain(std::iter::once("order".to_string()))
        .chain(summary.primes.iter().map(|p| format!("p={p}")))
        .collect::<Vec<_>>()];
    for row in &summary.rows {
        let mut line = vec![row.group.clone(), row.order.to_string()];
        for c in &row.cells {
            let hyp = if c.hypothesis_holds { "H" } else { "-" };
            let state = if c.fail == 0 { "ok" } else { "FAIL" };
            line.push(format!("{state} {hyp} {}/{}/{}", c.pass, c.fail, c.not_applicable));
        }
        rows.push(line);
    }
    let mut s = format!("seed {}; cells: status, H if C_G(P) = N_G(P), pass/fail/not-applicable\n\n", summary.seed);
    s.push_str(&grid(&rows));
    writeln!(s, "\nfailures: {}", summary.failures).unwrap();
    s
}

pub fn listing(registry: &CheckRegistry) -> String {
    let mut s = String::from("builtin groups:\n");
    for e in blocklab::catalog::entries() {
        writeln!(s, "  builtin:{:<8} order {}", e.name, e.order).unwrap();
    }
    s.push_str("checks:\n");
    for id in registry.ids() {
        let c = registry.get(id).expect("listed id");
        writeln!(s, "  {id:<22} {}", c.description()).unwrap();
    }
    s
}
