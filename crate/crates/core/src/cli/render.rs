use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use super::Format;
use crate::exact_linalg::AbelianGroup;
use crate::gysin::{CohomologyTable, DualityReport};
use crate::quotient_ring::{PoincarePolynomial, PresentedGradedRing};
use crate::spaces::Hol1Base;
use crate::{Error, Result};

/// Canonical JSON document for a table. Keys are sorted, trivial groups are
/// absent and torsion is the invariant-factor list.
pub fn emit_json(table: &CohomologyTable) -> String {
    table_value(table).to_string()
}

fn table_value(table: &CohomologyTable) -> Value {
    let groups: Map<String, Value> = table
        .groups()
        .iter()
        .map(|(d, g)| {
            let torsion: Vec<Value> = g.torsion().iter().map(bigint_value).collect();
            (
                d.to_string(),
                json!({ "rank": g.free_rank(), "torsion": torsion }),
            )
        })
        .collect();
    json!({
        "space": table.space,
        "n": table.n,
        "m": table.m,
        "dimension": table.dimension,
        "groups": groups,
    })
}

fn bigint_value(x: &BigInt) -> Value {
    // Torsion orders fit comfortably in a u64 for every space in scope.
    match u64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(x.to_string()),
    }
}

/// Inverse of [`emit_json`]. Unknown keys such as a duality report are ignored.
pub fn parse_table_json(text: &str) -> Result<CohomologyTable> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let bad = |what: &str| Error::Parse(format!("malformed table document: {what}"));
    let obj = doc.as_object().ok_or_else(|| bad("not an object"))?;
    let space = obj
        .get("space")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("space"))?;
    let opt_u32 = |key: &str| -> Result<Option<u32>> {
        match obj.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => v
                .as_u64()
                .and_then(|x| u32::try_from(x).ok())
                .map(Some)
                .ok_or_else(|| bad(key)),
        }
    };
    let mut groups = BTreeMap::new();
    let entries = obj
        .get("groups")
        .and_then(Value::as_object)
        .ok_or_else(|| bad("groups"))?;
    for (deg, g) in entries {
        let deg: u32 = deg.parse().map_err(|_| bad("degree key"))?;
        let rank = g
            .get("rank")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("rank"))?;
        let torsion = g
            .get("torsion")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("torsion"))?
            .iter()
            .map(|t| match t {
                Value::Number(n) => n.as_u64().map(BigInt::from),
                Value::String(s) => s.parse().ok(),
                _ => None,
            })
            .collect::<Option<Vec<BigInt>>>()
            .ok_or_else(|| bad("torsion entry"))?;
        groups.insert(deg, AbelianGroup::new(rank as usize, torsion)?);
    }
    Ok(CohomologyTable::new(
        space,
        opt_u32("n")?,
        opt_u32("m")?,
        opt_u32("dimension")?,
        groups,
    ))
}

pub fn render_table(table: &CohomologyTable, format: Format) -> String {
    render_table_with(table, format, false, None)
}

pub(super) fn render_table_with(
    table: &CohomologyTable,
    format: Format,
    primary: bool,
    report: Option<&DualityReport>,
) -> String {
    let group_text = |g: &AbelianGroup| {
        if primary {
            g.to_primary_string()
        } else {
            g.to_string()
        }
    };
    let mut out = String::new();
    match format {
        Format::Text => {
            out.push_str(&heading(table));
            out.push('\n');
            for (d, g) in table.groups() {
                let _ = writeln!(out, "H^{d} = {}", group_text(g));
            }
            if let Some(r) = report {
                let _ = write!(out, "{r}");
            }
        }
        Format::Md => {
            let _ = writeln!(out, "**{}**\n", heading(table));
            out.push_str("| i | H^i |\n|---|---|\n");
            for (d, g) in table.groups() {
                let _ = writeln!(out, "| {d} | {} |", group_text(g));
            }
            if let Some(r) = report {
                out.push('\n');
                for line in r.to_string().lines() {
                    let _ = writeln!(out, "> {line}");
                }
            }
        }
        Format::Latex => {
            let _ = writeln!(out, "% {}", heading(table));
            let cols = table.groups().len() + 1;
            let _ = writeln!(out, "\\begin{{tabular}}{{|{}}}", "c|".repeat(cols));
            out.push_str("  \\hline\n  $i$");
            for d in table.groups().keys() {
                let _ = write!(out, " & {d}");
            }
            out.push_str(" \\\\\n  $H^i$");
            for g in table.groups().values() {
                let _ = write!(out, " & {}", latex_group(g, primary));
            }
            out.push_str(" \\\\ \\hline\n\\end{tabular}\n");
            if let Some(r) = report {
                for line in r.to_string().lines() {
                    let _ = writeln!(out, "% {line}");
                }
            }
        }
        Format::Json => {
            let mut v = table_value(table);
            if let Some(r) = report {
                v["duality"] = json!({
                    "passed": r.passed(),
                    "dimension": r.dimension,
                    "betti_symmetry": r.betti_symmetry,
                    "torsion_duality": r.torsion_duality,
                    "euler_characteristic_zero": r.euler_characteristic_zero,
                    "nothing_above_dimension": r.nothing_above_dimension,
                    "failures": r.failures,
                });
            }
            out = v.to_string();
            out.push('\n');
        }
    }
    out
}

fn heading(table: &CohomologyTable) -> String {
    match table.dimension {
        Some(d) => format!("{} (dimension {d})", table.space),
        None => table.space.clone(),
    }
}

/// Torsion summands first, as in the usual printed tables.
fn latex_group(g: &AbelianGroup, primary: bool) -> String {
    let torsion = if primary {
        g.primary_decomposition()
    } else {
        g.torsion().to_vec()
    };
    let mut parts: Vec<String> = torsion
        .iter()
        .map(|t| format!("\\mathbb{{Z}}_{{{t}}}"))
        .collect();
    parts.extend(std::iter::repeat_n(
        "\\mathbb{Z}".to_string(),
        g.free_rank(),
    ));
    if parts.is_empty() {
        "$0$".into()
    } else {
        format!("${}$", parts.join("\\oplus "))
    }
}

pub(super) fn render_poincare(p: &PoincarePolynomial, format: Format) -> String {
    match format {
        Format::Text => format!("{p}\n"),
        Format::Md => format!("`P(t) = {p}`\n"),
        Format::Latex => {
            let mut s = String::new();
            for (d, &c) in p.coefficients().iter().enumerate().filter(|(_, &c)| c > 0) {
                if !s.is_empty() {
                    s.push('+');
                }
                match (d, c) {
                    (0, _) => s.push_str(&c.to_string()),
                    (_, 1) => s.push_str(&format!("t^{{{d}}}")),
                    _ => s.push_str(&format!("{c}t^{{{d}}}")),
                }
            }
            if s.is_empty() {
                s.push('0');
            }
            format!("$P(t) = {s}$\n")
        }
        Format::Json => {
            let v = json!({
                "poincare": p.to_string(),
                "coefficients": p.coefficients(),
            });
            format!("{v}\n")
        }
    }
}

pub(super) fn render_ring(
    label: &str,
    ring: &PresentedGradedRing,
    format: Format,
) -> Result<String> {
    let gens = ring.generators();
    let relations: Vec<String> = ring.relations().iter().map(ToString::to_string).collect();
    let top = ring.truncation_degree();
    let mut degrees = Vec::new();
    for d in (0..=top).step_by(2) {
        let b = ring.degree_basis(d);
        if b.rank() == 0 && b.torsion_report().is_empty() {
            continue;
        }
        let basis: Vec<String> = b.basis().iter().map(ToString::to_string).collect();
        degrees.push((d, b.rank(), b.torsion_report().to_vec(), basis));
    }
    let poincare = ring.poincare_polynomial()?;

    let mut out = String::new();
    match format {
        Format::Text | Format::Md => {
            let md = format == Format::Md;
            let gen_list: Vec<String> = gens
                .iter()
                .map(|g| format!("{} (degree {})", g.name(), g.degree()))
                .collect();
            if md {
                let _ = writeln!(out, "**{label}**\n");
                let _ = writeln!(out, "- generators: {}", gen_list.join(", "));
                out.push_str("- relations:\n");
                for r in &relations {
                    let _ = writeln!(out, "  - `{r}`");
                }
                out.push_str("\n| degree | rank | torsion | basis |\n|---|---|---|---|\n");
                for (d, rank, torsion, basis) in &degrees {
                    let _ = writeln!(
                        out,
                        "| {d} | {rank} | {} | {} |",
                        torsion_list(torsion),
                        basis.join(", ")
                    );
                }
                let _ = writeln!(out, "\npoincare: `{poincare}`");
            } else {
                let _ = writeln!(out, "{label}");
                let _ = writeln!(out, "generators: {}", gen_list.join(", "));
                out.push_str("relations:\n");
                for r in &relations {
                    let _ = writeln!(out, "  {r}");
                }
                for (d, rank, torsion, basis) in &degrees {
                    let _ = write!(out, "H^{d}: rank {rank}");
                    if !torsion.is_empty() {
                        let _ = write!(out, ", torsion {}", torsion_list(torsion));
                    }
                    let _ = writeln!(out, "; basis {}", basis.join(", "));
                }
                let _ = writeln!(out, "poincare: {poincare}");
            }
        }
        Format::Latex => {
            let _ = writeln!(out, "% {label}");
            let names: Vec<String> = gens.iter().map(|g| g.name().to_string()).collect();
            let _ = writeln!(
                out,
                "$\\mathbb{{Z}}[{}] / ({})$\n",
                names.join(", "),
                relations.join(", ")
            );
            out.push_str("\\begin{tabular}{|c|c|}\n  \\hline\n  degree & rank \\\\ \\hline\n");
            for (d, rank, _, _) in &degrees {
                let _ = writeln!(out, "  {d} & {rank} \\\\");
            }
            out.push_str("  \\hline\n\\end{tabular}\n");
            out.push_str(&render_poincare(&poincare, Format::Latex));
        }
        Format::Json => {
            let generators: Vec<Value> = gens
                .iter()
                .map(|g| json!({ "name": g.name(), "degree": g.degree() }))
                .collect();
            let per_degree: Map<String, Value> = degrees
                .iter()
                .map(|(d, rank, torsion, basis)| {
                    let torsion: Vec<Value> = torsion.iter().map(bigint_value).collect();
                    (
                        d.to_string(),
                        json!({ "rank": rank, "torsion": torsion, "basis": basis }),
                    )
                })
                .collect();
            let v = json!({
                "space": label,
                "generators": generators,
                "relations": relations,
                "truncation_degree": top,
                "degrees": per_degree,
                "poincare": poincare.to_string(),
            });
            let _ = writeln!(out, "{v}");
        }
    }
    Ok(out)
}

fn torsion_list(t: &[BigInt]) -> String {
    let items: Vec<String> = t.iter().map(ToString::to_string).collect();
    format!("[{}]", items.join(", "))
}

pub(super) fn render_euler(
    base: &Hol1Base,
    raw: &str,
    reduced: &str,
    closed: Option<(String, bool)>,
    format: Format,
) -> String {
    let names = base.ring.generators().names();
    let pairs: Vec<(String, String)> = base.aliases.iter().cloned().zip(names).collect();
    let alias_text: Vec<String> = pairs.iter().map(|(a, n)| format!("{a} = {n}")).collect();
    let title = format!(
        "Euler class of Hol1(Gr({},{})) over {}",
        base.n, base.m, base.spec
    );
    let mut out = String::new();
    match format {
        Format::Text => {
            let _ = writeln!(out, "{title}");
            let _ = writeln!(out, "aliases: {}", alias_text.join(", "));
            let _ = writeln!(out, "e = {raw}");
            let _ = writeln!(out, "reduced: {reduced}");
            if let Some((c, ok)) = &closed {
                let _ = writeln!(out, "closed form: {c} ({})", agreement(*ok));
            }
        }
        Format::Md => {
            let _ = writeln!(out, "**{title}**\n");
            let _ = writeln!(out, "- aliases: {}", alias_text.join(", "));
            let _ = writeln!(out, "- e = `{raw}`");
            let _ = writeln!(out, "- reduced: `{reduced}`");
            if let Some((c, ok)) = &closed {
                let _ = writeln!(out, "- closed form: `{c}` ({})", agreement(*ok));
            }
        }
        Format::Latex => {
            let _ = writeln!(out, "% {title}");
            let _ = writeln!(out, "$e = {}$", latex_poly(raw));
            let _ = writeln!(out, "% reduced: ${}$", latex_poly(reduced));
        }
        Format::Json => {
            let aliases: Map<String, Value> = pairs
                .into_iter()
                .map(|(a, n)| (a, Value::from(n)))
                .collect();
            let mut v = json!({
                "n": base.n,
                "m": base.m,
                "base": base.spec.to_string(),
                "aliases": aliases,
                "euler": raw,
                "reduced": reduced,
            });
            if let Some((c, ok)) = closed {
                v["closed_form"] = Value::from(c);
                v["closed_form_agrees"] = Value::from(ok);
            }
            let _ = writeln!(out, "{v}");
        }
    }
    out
}

fn agreement(ok: bool) -> &'static str {
    if ok {
        "agrees in the ring"
    } else {
        "DISAGREES in the ring"
    }
}

/// `x^12` becomes `x^{12}` and the product dot is dropped.
fn latex_poly(s: &str) -> String {
    let mut out = String::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '^' => {
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                let _ = write!(out, "^{{{digits}}}");
            }
            '·' => out.push(' '),
            _ => out.push(c),
        }
    }
    out
}
