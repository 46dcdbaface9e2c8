//! Human-readable renderings of the JSON documents.

use std::fmt::Write;

use crate::commands::{FlexibilityDoc, HolesDoc, LndDoc, OrbitsDoc, RootsDoc, VerifyDoc};
use crate::doc::{BoundsDoc, CertificatesDoc, Int, ObstructionDoc, OracleDoc, OrbitDoc, ReportDocument, StatusDoc};

fn v(x: &[Int]) -> String {
    let parts: Vec<String> = x.iter().map(|c| c.0.to_string()).collect();
    format!("({})", parts.join(","))
}

fn list(xs: &[Vec<Int>]) -> String {
    if xs.is_empty() {
        return "none".into();
    }
    xs.iter().map(|x| v(x)).collect::<Vec<_>>().join(" ")
}

fn bounds(b: &BoundsDoc) -> String {
    let show = |x: Option<u64>| x.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
    format!(
        "degree={} module_degree={} search_degree={} root_height={}",
        show(b.degree),
        show(b.module_degree),
        show(b.search_degree),
        show(b.root_height)
    )
}

fn certificate(c: &CertificatesDoc) -> String {
    match (&c.hyperplane_normal, &c.spanning_rays) {
        (Some(u), _) => format!("γ lies in the hyperplane {}⊥", v(u)),
        (None, Some(rays)) => format!("γ contains the independent rays {}", list(rays)),
        _ => "no certificate".into(),
    }
}

fn oracle(out: &mut String, o: &Option<OracleDoc>) {
    if let Some(o) = o {
        writeln!(out, "oracle: {} checks agree (holes up to degree {})", o.checks, o.degree).unwrap();
    }
}

fn orbit_lines(out: &mut String, orbits: &[OrbitDoc]) {
    for o in orbits {
        let reg = o.regularity.as_deref().map(|r| format!(", {}", r.replace('_', " "))).unwrap_or_default();
        let face = if o.face_rays.is_empty() { "{0}".to_string() } else { list(&o.face_rays) };
        writeln!(out, "  dim {} codim {}: face {face}{reg}", o.dim, o.codim).unwrap();
    }
}

fn status(s: &Option<StatusDoc>) -> String {
    match s {
        None => "not a codimension-one orbit".into(),
        Some(StatusDoc::AlmostSaturated { witness }) => format!("almost saturated, witness {}", v(witness)),
        Some(StatusDoc::NowhereSaturated { obstruction }) => match obstruction {
            ObstructionDoc::Joint { m, .. } => format!("nowhere saturated, joint system for m = {} infeasible", v(m)),
            ObstructionDoc::Shift { m, branches } => {
                format!("nowhere saturated, m = {} fails in all {} shift branches", v(m), branches.len())
            }
        },
        Some(StatusDoc::Undecided { bound }) => format!("undecided up to degree {bound}"),
    }
}

pub fn report(d: &ReportDocument) -> String {
    let mut out = String::new();
    writeln!(out, "lattice rank {}, dim X = {}", d.lattice_rank, d.dim_x).unwrap();
    writeln!(out, "σ∨ rays: {}", list(&d.sigma_dual_rays)).unwrap();
    if !d.sigma_dual_lines.is_empty() {
        writeln!(out, "σ∨ lines: {}", list(&d.sigma_dual_lines)).unwrap();
    }
    writeln!(out, "σ rays: {}", list(&d.sigma_rays)).unwrap();
    writeln!(out, "θ rays: {}", list(&d.theta_rays)).unwrap();
    writeln!(out, "orbits:").unwrap();
    orbit_lines(&mut out, &d.orbits);
    let complete = if d.module_generators.complete { "complete" } else { "incomplete" };
    writeln!(out, "module generators ({complete}): {}", list(&d.module_generators.gens)).unwrap();
    for r in &d.ray_statuses {
        writeln!(out, "ray {}: {}", v(&r.ray), status(&r.status)).unwrap();
    }
    writeln!(out, "γ_min rays: {}", list(&d.gamma_min_rays)).unwrap();
    writeln!(out, "γ_max rays: {}", list(&d.gamma_max_rays)).unwrap();
    writeln!(out, "verdict: {} ({})", d.verdict, certificate(&d.certificates)).unwrap();
    writeln!(out, "bounds: {}", bounds(&d.bounds_used)).unwrap();
    oracle(&mut out, &d.oracle);
    out
}

pub fn flexibility(d: &FlexibilityDoc) -> String {
    let mut out = String::new();
    writeln!(out, "dim X = {}", d.dim_x).unwrap();
    writeln!(out, "γ_min rays: {}", list(&d.gamma_min_rays)).unwrap();
    writeln!(out, "γ_max rays: {}", list(&d.gamma_max_rays)).unwrap();
    writeln!(out, "verdict: {} ({})", d.verdict, certificate(&d.certificates)).unwrap();
    writeln!(out, "bounds: {}", bounds(&d.bounds_used)).unwrap();
    oracle(&mut out, &d.oracle);
    out
}

pub fn orbits(d: &OrbitsDoc) -> String {
    let mut out = format!("lattice rank {}, dim X = {}\n", d.lattice_rank, d.dim_x);
    orbit_lines(&mut out, &d.orbits);
    out
}

pub fn holes(d: &HolesDoc) -> String {
    let mut out = String::new();
    writeln!(out, "holes up to degree {}: {}", d.degree, list(&d.holes)).unwrap();
    let complete = if d.module_generators.complete { "complete" } else { "incomplete" };
    writeln!(out, "module generators ({complete}): {}", list(&d.module_generators.gens)).unwrap();
    oracle(&mut out, &d.oracle);
    out
}

pub fn roots(d: &RootsDoc) -> String {
    let mut out = String::new();
    for r in &d.rays {
        let tag = if r.codim_one { " (codimension one)" } else { "" };
        writeln!(out, "ray {}{tag}, roots up to height {}:", v(&r.ray), d.height).unwrap();
        for root in &r.roots {
            let theta = if root.in_theta_dual { ", in θ∨" } else { "" };
            writeln!(out, "  {} height {}{theta}", v(&root.e), root.height).unwrap();
        }
    }
    out
}

pub fn lnd(d: &LndDoc) -> String {
    let mut out = String::new();
    for e in &d.derivations {
        match (&e.degree, &e.reason) {
            (Some(deg), _) => {
                writeln!(out, "ray {}: derivation of degree {}", v(&e.ray), v(deg)).unwrap();
                for c in &e.shift_checks {
                    writeln!(out, "  {} + e = {} = {}·G", v(&c.generator), v(&c.shifted), v(&c.representation))
                        .unwrap();
                }
            }
            (None, Some(reason)) => writeln!(out, "ray {}: {reason}", v(&e.ray)).unwrap(),
            (None, None) => writeln!(out, "ray {}: {}", v(&e.ray), e.status).unwrap(),
        }
    }
    out
}

pub fn verify(d: &VerifyDoc) -> String {
    format!("verified: {}\n", d.verdict)
}
