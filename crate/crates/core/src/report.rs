//! Markdown phase report across a range of genera.

use std::fmt::Write;

use crate::descent::{coarse_coefficient, RamifiedBoundary};
use crate::divisor::{log_canonical_divisor, Genus, Model};
use crate::error::{Error, Result};
use crate::phase::{
    contracted_loci_description, critical_alphas, discrepancy_coefficient, PhaseReport,
};
use crate::rational::{format as fmt_q, int, Rational};

pub const MIN_GENUS: u32 = 3;
pub const MAX_GENUS: u32 = 100;

fn curves(list: &[crate::fcurves::FCurve]) -> String {
    if list.is_empty() {
        return "none".into();
    }
    list.iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn write_walls(out: &mut String, report: &PhaseReport, label: &str) -> Result<()> {
    writeln!(out, "### {label}\n").ok();
    if report.walls.is_empty() {
        writeln!(out, "No walls in [0, 1].\n").ok();
        return Ok(());
    }
    writeln!(
        out,
        "| alpha | certified | contracted F-curves | discrepancy 9 - 11 alpha |"
    )
    .ok();
    writeln!(out, "|---|---|---|---|").ok();
    for w in &report.walls {
        let c = discrepancy_coefficient(&w.alpha)?;
        let certified = if w.certified {
            "yes"
        } else {
            "outside certified range"
        };
        writeln!(
            out,
            "| {} | {} | {} | {} |",
            fmt_q(&w.alpha),
            certified,
            curves(&w.contracted),
            fmt_q(&c)
        )
        .ok();
    }
    if !report.identically_zero.is_empty() {
        writeln!(
            out,
            "\nIdentically zero rows: {}.",
            curves(&report.identically_zero)
        )
        .ok();
    }
    writeln!(out).ok();
    Ok(())
}

/// Coarse-space coefficients of Δ_1 and Δ_i (i ≠ 1) at the given α values.
fn write_dagger_table(out: &mut String, g: Genus, alphas: &[Rational]) -> Result<()> {
    writeln!(out, "### Coarse-space boundary coefficients\n").ok();
    writeln!(
        out,
        "| alpha | Delta_i (i != 1) | Delta_1 = (1 + alpha)/2 | lambda | b_1 of the class |"
    )
    .ok();
    writeln!(out, "|---|---|---|---|---|").ok();
    for a in alphas {
        let delta1 = coarse_coefficient(&RamifiedBoundary::new(2, a.clone())?);
        let class = log_canonical_divisor(g, a, Model::CoarseDagger)?;
        let b1 = class.b(1).expect("index 1 exists").clone();
        writeln!(
            out,
            "| {} | {} | {} | {} | {} |",
            fmt_q(a),
            fmt_q(a),
            fmt_q(&delta1),
            fmt_q(class.lambda_coeff()),
            fmt_q(&b1)
        )
        .ok();
    }
    writeln!(out).ok();
    Ok(())
}

fn genus_section(out: &mut String, g: Genus) -> Result<()> {
    writeln!(out, "## Genus {}\n", g.get()).ok();
    let stack = critical_alphas(g, Model::MgStack)?;
    let pullback = critical_alphas(g, Model::PsPullback)?;
    write_walls(out, &stack, "K + alpha delta on the moduli stack")?;
    write_walls(
        out,
        &pullback,
        "Pullback of K + alpha delta from the pseudostable space",
    )?;

    let mut alphas = vec![int(1)];
    alphas.extend(stack.critical_alphas());
    alphas.extend(pullback.critical_alphas());
    alphas.sort_by(|x, y| y.cmp(x));
    alphas.dedup();
    write_dagger_table(out, g, &alphas)?;

    writeln!(out, "### Contracted loci\n").ok();
    let loci = contracted_loci_description(g);
    if let Some(t0) = &loci.t0 {
        writeln!(out, "- {}: {}", t0.name, t0.description).ok();
    }
    for t in &loci.ti {
        writeln!(out, "- {}: {}", t.name, t.description).ok();
    }
    writeln!(
        out,
        "\nAll of these have codimension {}.\n",
        loci.codimension
    )
    .ok();
    Ok(())
}

/// Report for every genus in `first..=last`; an empty range gives an empty string.
pub fn report(first: u32, last: u32) -> Result<String> {
    let mut out = String::new();
    if first > last {
        return Ok(out);
    }
    if first < MIN_GENUS || last > MAX_GENUS {
        return Err(Error::InvalidArgument(format!(
            "genus range {first}..={last} must lie in {MIN_GENUS}..={MAX_GENUS}"
        )));
    }
    for g in first..=last {
        genus_section(&mut out, Genus::new(g)?)?;
    }
    Ok(out)
}
