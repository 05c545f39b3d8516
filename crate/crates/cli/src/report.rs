//! Report types. Each renders as text or serializes to JSON; neither form
//! contains timestamps or host details, so reports are reproducible.

use std::fmt::Write;

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Report {
    Novikov(NovikovReport),
    Equivariant(EquivariantReport),
    Verify(VerifyReport),
    Symplectic(SymplecticReport),
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Self::Novikov(r) => r.write_text(&mut out),
            Self::Equivariant(r) => r.write_text(&mut out),
            Self::Verify(r) => r.write_text(&mut out),
            Self::Symplectic(r) => r.write_text(&mut out),
        }
        .expect("writing to a string");
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplexSummary {
    pub vertices: usize,
    pub dimension: Option<usize>,
    pub simplex_counts: Vec<usize>,
}

impl ComplexSummary {
    fn describe(&self) -> String {
        let dim = self.dimension.map_or("empty".to_string(), |d| format!("dimension {d}"));
        let noun = if self.vertices == 1 { "vertex" } else { "vertices" };
        format!(
            "{} {noun}, {dim}, simplex counts {}",
            self.vertices,
            tuple(&self.simplex_counts)
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct JumpEntry {
    /// Exact parameter `s` when the root is rational.
    pub s: Option<String>,
    /// Isolating interval for `s`.
    pub s_interval: [String; 2],
    /// `t`, exact when it is 0 and otherwise to six decimals.
    pub t: String,
    pub dimension: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeJumps {
    pub degree: usize,
    pub background: usize,
    pub jumps: Vec<JumpEntry>,
    /// Roots of the drop locus that are not positive reals.
    pub other_roots: usize,
}

fn write_jumps(out: &mut String, jumps: &[DegreeJumps]) -> std::fmt::Result {
    writeln!(out, "jumps:")?;
    for d in jumps {
        if d.jumps.is_empty() {
            write!(out, "  degree {}: none", d.degree)?;
        } else {
            let parts: Vec<String> = d
                .jumps
                .iter()
                .map(|j| {
                    let at = match &j.s {
                        Some(s) => format!("t = {} (s = {s})", j.t),
                        None => format!("t in {} (s in [{}, {}])", j.t, j.s_interval[0], j.s_interval[1]),
                    };
                    format!("{at} where dim = {}", j.dimension)
                })
                .collect();
            write!(out, "  degree {}: background {}; jump at {}", d.degree, d.background, parts.join("; "))?;
        }
        if d.other_roots > 0 {
            write!(out, " ({} locus roots off s > 0)", d.other_roots)?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn tuple<T: std::fmt::Display>(values: &[T]) -> String {
    let parts: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "✓"
    } else {
        "✗"
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EulerCheck {
    pub alternating_sum: i64,
    /// Rank times the Euler characteristic of the complex.
    pub expected: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct NovikovReport {
    pub description: Option<String>,
    pub complex: ComplexSummary,
    pub rank: usize,
    pub exponent_scale: String,
    pub betti: Vec<usize>,
    pub euler: EulerCheck,
    pub jumps: Option<Vec<DegreeJumps>>,
}

impl NovikovReport {
    fn write_text(&self, out: &mut String) -> std::fmt::Result {
        if let Some(d) = &self.description {
            writeln!(out, "{d}")?;
        }
        writeln!(out, "complex: {}", self.complex.describe())?;
        writeln!(out, "local system rank {}, exponent scale {}", self.rank, self.exponent_scale)?;
        for (i, b) in self.betti.iter().enumerate() {
            writeln!(out, "β_{i} = {b}")?;
        }
        writeln!(
            out,
            "euler characteristic: Σ (-1)^i β_i = {} = rank · χ = {} {}",
            self.euler.alternating_sum,
            self.euler.expected,
            mark(self.euler.holds)
        )?;
        if let Some(j) = &self.jumps {
            write_jumps(out, j)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilityEntry {
    pub acyclicities: [usize; 2],
    pub through_degree: usize,
    pub stable: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DescentEntry {
    pub free: bool,
    /// Twisted dimensions of the quotient, when the action is free.
    pub quotient: Option<Vec<usize>>,
    pub agrees: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivariantReport {
    pub description: Option<String>,
    pub group_order: usize,
    pub complex: ComplexSummary,
    pub rank: usize,
    pub exponent_scale: String,
    pub acyclicity: usize,
    pub betti: Vec<usize>,
    pub stability: Option<StabilityEntry>,
    pub descent: DescentEntry,
    pub jumps: Option<Vec<DegreeJumps>>,
}

impl EquivariantReport {
    fn write_text(&self, out: &mut String) -> std::fmt::Result {
        if let Some(d) = &self.description {
            writeln!(out, "{d}")?;
        }
        writeln!(out, "group of order {} acting on: {}", self.group_order, self.complex.describe())?;
        writeln!(
            out,
            "local system rank {}, exponent scale {}, resolution acyclicity {}",
            self.rank, self.exponent_scale, self.acyclicity
        )?;
        for (i, b) in self.betti.iter().enumerate() {
            writeln!(out, "β^G_{i} = {b}")?;
        }
        writeln!(out, "dims: {}", tuple(&self.betti))?;
        if let Some(s) = &self.stability {
            writeln!(
                out,
                "stability: acyclicity {} and {} through degree {}: {}",
                s.acyclicities[0],
                s.acyclicities[1],
                s.through_degree,
                if s.stable { "stable ✓" } else { "unstable ✗" }
            )?;
        }
        match (&self.descent.quotient, self.descent.agrees) {
            (Some(q), Some(ok)) => writeln!(out, "descent: free action, quotient dims {} {}", tuple(q), mark(ok))?,
            _ => writeln!(out, "descent: action not free, check skipped")?,
        }
        if let Some(j) = &self.jumps {
            write_jumps(out, j)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentEntry {
    pub label: String,
    pub index: usize,
    pub stabilizer_order: usize,
    pub series: Vec<String>,
    #[serde(skip)]
    pub series_text: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesEntry {
    pub coefficients: Vec<String>,
    #[serde(skip)]
    pub text: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictEntry {
    /// `perfect`, `holds` or `fails`.
    pub status: String,
    pub degree: Option<usize>,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub description: Option<String>,
    pub group_order: usize,
    pub pmax: usize,
    pub components: Vec<ComponentEntry>,
    pub morse: SeriesEntry,
    pub novikov: SeriesEntry,
    /// `computed` or `supplied`.
    pub novikov_source: String,
    pub difference: SeriesEntry,
    pub remainder: SeriesEntry,
    pub routes_agree: bool,
    pub verdict: VerdictEntry,
}

impl VerifyReport {
    fn write_text(&self, out: &mut String) -> std::fmt::Result {
        if let Some(d) = &self.description {
            writeln!(out, "{d}")?;
        }
        writeln!(out, "group order {}, truncation p_max = {}", self.group_order, self.pmax)?;
        if self.components.is_empty() {
            writeln!(out, "critical components: none")?;
        } else {
            writeln!(out, "critical components:")?;
        }
        for c in &self.components {
            writeln!(
                out,
                "  {}: index {}, stabilizer order {}, P_Z = {}",
                c.label, c.index, c.stabilizer_order, c.series_text
            )?;
        }
        writeln!(out, "M(λ) = {}", self.morse.text)?;
        writeln!(out, "N(λ) = {} ({})", self.novikov.text, self.novikov_source)?;
        writeln!(out, "M - N = {}", self.difference.text)?;
        writeln!(
            out,
            "Q(λ) = {} (alternating sums and series division {})",
            self.remainder.text,
            if self.routes_agree { "agree" } else { "DISAGREE" }
        )?;
        let v = &self.verdict;
        match v.status.as_str() {
            "perfect" => writeln!(out, "verdict: PERFECT (Q = 0)"),
            "holds" => writeln!(out, "verdict: HOLDS (Q has non-negative integer coefficients)"),
            _ => writeln!(
                out,
                "verdict: FAILS at p = {} ({})",
                v.degree.unwrap_or(0),
                v.reason.as_deref().unwrap_or("")
            ),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CountsEntry {
    pub m: Vec<String>,
    pub total: String,
    /// Stable value of the series, when two equal even coefficients at
    /// degree at least `n` close the truncation.
    pub stable_value: Option<String>,
    /// `None` when the series is shorter than `n`.
    pub symmetry_holds: Option<bool>,
    pub euler_checked: Option<bool>,
    pub degree_zero_anomaly: bool,
    pub violations: Vec<String>,
}

impl CountsEntry {
    fn write_text(&self, out: &mut String, total_label: &str) -> std::fmt::Result {
        writeln!(out, "fixed-point counts m = {}", tuple(&self.m))?;
        let total = match total_label {
            "" => "total".to_string(),
            label => format!("total {label}"),
        };
        match self.euler_checked {
            Some(true) => writeln!(out, "{total} = {} = χ ✓", self.total)?,
            Some(false) => writeln!(out, "{total} = {} ≠ χ ✗", self.total)?,
            None => writeln!(out, "{total} = {}", self.total)?,
        }
        match self.symmetry_holds {
            Some(ok) => writeln!(out, "symmetry m_i = m_(n-i): {}", mark(ok))?,
            None => writeln!(out, "symmetry m_i = m_(n-i): skipped, series shorter than n")?,
        }
        match (&self.stable_value, self.euler_checked) {
            (Some(v), Some(ok)) => writeln!(out, "stabilization: β = {v}, compared with d·χ {}", mark(ok))?,
            (Some(v), None) => writeln!(out, "stabilization: β = {v} (χ not supplied, Euler check skipped)")?,
            (None, _) => writeln!(out, "stabilization: unverified, total and Euler checks skipped")?,
        }
        if self.degree_zero_anomaly {
            writeln!(out, "anomaly: degree 0 dimension is 0, impossible for a nonempty manifold")?;
        }
        for v in &self.violations {
            writeln!(out, "violation: {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedSetSummary {
    pub ambient_dimension: usize,
    pub rank: usize,
    pub torus_rank: usize,
    pub components: usize,
    pub euler_characteristic: Option<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymplecticReport {
    pub description: Option<String>,
    pub pmax: usize,
    pub fixed_set: FixedSetSummary,
    /// Large-degree even and odd equivariant dimensions.
    pub stable_dims: [usize; 2],
    pub localized: SeriesEntry,
    pub novikov: SeriesEntry,
    pub identity_holds: bool,
    pub first_discrepancy: Option<usize>,
    pub counts: CountsEntry,
    pub hamiltonian: Option<CountsEntry>,
}

impl SymplecticReport {
    fn write_text(&self, out: &mut String) -> std::fmt::Result {
        if let Some(d) = &self.description {
            writeln!(out, "{d}")?;
        }
        let f = &self.fixed_set;
        writeln!(
            out,
            "fixed set: {} components in dimension {}; local system rank {}; torus rank {}",
            f.components, f.ambient_dimension, f.rank, f.torus_rank
        )?;
        writeln!(
            out,
            "localization: stable even/odd dimensions ({}, {})",
            self.stable_dims[0], self.stable_dims[1]
        )?;
        writeln!(out, "localized side: {}", self.localized.text)?;
        writeln!(out, "Novikov series: {}", self.novikov.text)?;
        match self.first_discrepancy {
            None => writeln!(out, "perfectness identity holds through degree {}", self.pmax)?,
            Some(p) => writeln!(out, "perfectness identity fails: first discrepancy at degree {p}")?,
        }
        self.counts.write_text(out, "")?;
        if f.components == 0 && self.identity_holds && self.counts.violations.is_empty() {
            writeln!(out, "consistent: no fixed points, all equivariant Novikov numbers vanish")?;
        }
        if let Some(h) = &self.hamiltonian {
            writeln!(out, "hamiltonian case (equivariant cohomology dims):")?;
            h.write_text(out, "dim H^n_T")?;
        }
        Ok(())
    }
}
