use std::fmt::Write as _;

use hodge_core::domain::{describe_domain, DomainDescriptor};
use hodge_core::pi2::{pi2_report, superhorizontal_generation_report, Pi2Report, SuperhorizontalReport};
use hodge_core::rootcalc::{bracket_generating_check, parabolic_from_ranks, BracketGeneration};
use hodge_core::HodgeNumbers;
use serde::{Deserialize, Serialize};

use crate::{to_json, Format, SCHEMA};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub schema: String,
    pub ranks: HodgeNumbers,
    /// Complex dimension of the period domain.
    pub dim: usize,
    pub domain: DomainDescriptor,
    pub pi2: Pi2Report,
    pub superhorizontal: SuperhorizontalReport,
    pub bracket_generation: BracketGeneration,
}

pub fn run_report(ranks: &HodgeNumbers) -> ReportDoc {
    let domain = describe_domain(ranks);
    ReportDoc {
        schema: SCHEMA.to_string(),
        ranks: ranks.clone(),
        dim: domain.dim_du,
        domain,
        pi2: pi2_report(ranks),
        superhorizontal: superhorizontal_generation_report(ranks),
        bracket_generation: bracket_generating_check(&parabolic_from_ranks(ranks)),
    }
}

pub fn render(doc: &ReportDoc, format: Format) -> String {
    match format {
        Format::Json => to_json(doc),
        Format::Text => render_text(doc),
    }
}

fn render_text(doc: &ReportDoc) -> String {
    let d = &doc.domain;
    let mut s = String::new();
    let _ = writeln!(s, "schema: {}", doc.schema);
    let _ = writeln!(s, "hodge numbers: {}", doc.ranks);
    let _ = writeln!(s, "signature: ({}, {})", d.p, d.q);
    let _ = writeln!(s, "dimension: {}", doc.dim);
    let _ = writeln!(s, "horizontal rank: {}", d.horizontal_rank);
    let _ = writeln!(s, "vertical rank: {}", d.vertical_rank);
    let _ = writeln!(s, "fiber factors: {:?} x {:?}", d.fiber_factors.0, d.fiber_factors.1);
    let _ = writeln!(s, "rank pi2(D_u): {}", doc.pi2.rank_du);
    let _ = writeln!(s, "rank pi2(D): {}", doc.pi2.rank_d);
    let _ = writeln!(s, "kernel matches: {}", doc.pi2.kernel_matches);
    for g in &doc.superhorizontal.per_generator {
        let status = serde_json::to_value(g.status).expect("enum");
        let _ = writeln!(s, "generator {}: {}", g.index, status.as_str().unwrap_or("?"));
    }
    let _ = writeln!(s, "fully generated: {}", doc.superhorizontal.fully_generated);
    let _ = writeln!(s, "rank-one interior piece: {}", doc.superhorizontal.cartoun_hypothesis);
    let _ = writeln!(s, "bracket generating: {}", doc.bracket_generation.generated);
    for l in &doc.bracket_generation.levels {
        let _ = writeln!(s, "  depth {}: rank {} of {}", l.depth, l.rank, l.dim);
    }
    s
}
