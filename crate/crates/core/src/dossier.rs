//! The dossier: one JSON record of every probe for a family, and its verifier.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::ambient::{Ambient, GroupElement, Kind};
use crate::catalog;
use crate::config::Params;
use crate::error::{Error, Result};
use crate::groupoid::{self, Checklist, ChecklistInput, G0Verdict, LocalBoundary, TopFree, Verdict};
use crate::hull::hull_enumerate;
use crate::ideal::{check_dependence, closure_to_depth, independence_check, IdealFamily, Independence};
use crate::spectrum::{self, BasicOpen, Invariance};
use crate::toeplitz::{self, ConditionReport, Decomposition, Status};

pub const SCHEMA: &str = "sglab-dossier/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dossier {
    pub schema: String,
    pub tool_version: String,
    pub family: FamilyRecord,
    pub params: Params,
    pub ideals: IdealsRecord,
    pub independence: Independence,
    pub conditions: ConditionsRecord,
    pub hull: HullRecord,
    /// Absent when filter enumeration exceeded its cap.
    pub spectrum: Option<SpectrumRecord>,
    pub g0: Vec<G0Record>,
    pub local_boundary: Option<LocalBoundary>,
    pub checklist: Option<Checklist>,
    /// Every part of the record that is depth-relative or was cut short.
    pub truncation: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_clock_ms: Option<u64>,
    /// SHA-256 of the canonical serialization with this field empty.
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyRecord {
    pub id: String,
    pub kind: Kind,
    pub description: String,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealsRecord {
    pub nonempty: usize,
    pub truncated: bool,
    pub budget_hit: bool,
    pub stabilized_at: Option<usize>,
    pub members: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionCounts {
    pub words: usize,
    pub zero_case: usize,
    pub unknown: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionsRecord {
    pub toeplitz: ConditionReport,
    pub toeplitz_counts: DecompositionCounts,
    pub quasi_lattice: ConditionReport,
    pub left_ore: ConditionReport,
    pub left_reversible: ConditionReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HullRecord {
    pub depth: usize,
    pub size: usize,
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumRecord {
    pub filters: usize,
    pub ultrafilters: usize,
    pub boundary_size: usize,
    /// Member lists of the boundary filters.
    pub boundary: Vec<Vec<String>>,
    pub boundary_invariance: Invariance,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct G0Record {
    pub g: GroupElement,
    pub verdict: G0Verdict,
}

/// Nontrivial ball elements in order, then seeded random ones.
fn g0_candidates(amb: &Ambient, p: &Params) -> Vec<GroupElement> {
    let mut out: Vec<GroupElement> = amb.ball(p.bound).into_iter().filter(|g| !g.is_identity()).take(p.samples).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut tries = 0;
    while out.len() < 2 * p.samples && tries < 20 * p.samples.max(1) {
        tries += 1;
        let g = amb.random_element(&mut rng, 2 * p.bound.max(1));
        if !g.is_identity() && !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

pub fn analyze(amb: &Ambient, p: &Params) -> Dossier {
    let fam = closure_to_depth(amb, p.depth, &p.caps);
    let mut truncation = vec![format!("ideals: closure to depth {}", p.depth)];
    if fam.budget_hit {
        truncation.push(format!("ideals: cap of {} members reached", p.caps.max_ideals));
    }
    let independence = independence_check(amb, &fam);

    let (toeplitz, decomps) = toeplitz::toeplitz_probe(amb, p.bound);
    let count = |f: fn(&Decomposition) -> bool| decomps.iter().filter(|(_, d)| f(d)).count();
    let toeplitz_counts = DecompositionCounts {
        words: count(|d| matches!(d, Decomposition::Word(_))),
        zero_case: count(|d| matches!(d, Decomposition::ZeroCase)),
        unknown: count(|d| matches!(d, Decomposition::UnknownToBudget)),
    };
    let conditions = ConditionsRecord {
        toeplitz,
        toeplitz_counts,
        quasi_lattice: toeplitz::quasi_lattice_probe(amb, p.bound),
        left_ore: toeplitz::ore_probe(amb, p.bound),
        left_reversible: toeplitz::reversibility_probe(amb, p.bound),
    };

    let hull_depth = p.hull_depth.min(p.caps.max_hull_depth);
    let h = hull_enumerate(amb, hull_depth, &p.caps);
    if h.truncated {
        truncation.push(format!("hull: words of length at most {hull_depth}"));
    }
    let hull = HullRecord { depth: hull_depth, size: h.elements.len(), truncated: h.truncated };

    let candidates = g0_candidates(amb, p);
    let g0 = candidates
        .iter()
        .map(|g| G0Record { g: g.clone(), verdict: groupoid::g0_probe(amb, &fam, g) })
        .collect();

    let (spectrum, local_boundary, checklist) = match spectrum::spectrum(amb, &fam, &p.caps) {
        Ok(spec) => {
            truncation.push("spectrum: filters, ultrafilters and boundary relative to the family".into());
            let bd: Vec<_> = spec.boundary.iter().map(|&i| spec.filters[i].clone()).collect();
            let rec = SpectrumRecord {
                filters: spec.filters.len(),
                ultrafilters: spec.ultrafilters.len(),
                boundary_size: bd.len(),
                boundary: bd.iter().map(|f| f.member_strings(&fam)).collect(),
                boundary_invariance: spectrum::invariant_subset_check(amb, &fam, &bd, 1),
            };
            let lb = groupoid::local_boundary_witness(
                amb,
                &fam,
                &spec,
                &BasicOpen::everything(),
                &conditions.left_reversible,
            )
            .ok();
            let shifts = amb.ball(p.bound);
            let input = ChecklistInput {
                fam: &fam,
                spectrum: &spec,
                independence: &independence,
                toeplitz: &conditions.toeplitz,
                candidates: &candidates,
                max_samples: p.samples,
                shifts: &shifts,
            };
            (Some(rec), lb, groupoid::kirchberg_checklist(amb, &input).ok())
        }
        Err(e) => {
            truncation.push(format!("spectrum: {e}"));
            (None, None, None)
        }
    };

    Dossier {
        schema: SCHEMA.into(),
        tool_version: TOOL_VERSION.into(),
        family: FamilyRecord {
            id: amb.id.clone(),
            kind: amb.kind.clone(),
            description: amb.meta.description.clone(),
            generators: amb.generators.iter().map(|g| g.to_string()).collect(),
        },
        params: p.clone(),
        ideals: IdealsRecord {
            nonempty: fam.nonempty_count(),
            truncated: fam.truncated,
            budget_hit: fam.budget_hit,
            stabilized_at: fam.stabilized_at,
            members: fam.ideals.iter().map(|x| x.to_string()).collect(),
        },
        independence,
        conditions,
        hull,
        spectrum,
        g0,
        local_boundary,
        checklist,
        truncation,
        wall_clock_ms: None,
        digest: String::new(),
    }
    .sealed()
}

pub fn analyze_timed(amb: &Ambient, p: &Params) -> Dossier {
    let t = Instant::now();
    let mut d = analyze(amb, p);
    d.wall_clock_ms = Some(t.elapsed().as_millis() as u64);
    d.sealed()
}

impl Dossier {
    /// True when some cap stopped a stage early.
    pub fn budget_exceeded(&self) -> bool {
        self.ideals.budget_hit || self.spectrum.is_none()
    }

    pub fn compute_digest(&self) -> String {
        let mut bare = self.clone();
        bare.digest.clear();
        Sha256::digest(bare.to_canonical().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn sealed(mut self) -> Dossier {
        self.digest = self.compute_digest();
        self
    }

    pub fn to_canonical(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("dossier serializes");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        let v = serde_json::to_value(self).expect("dossier serializes");
        let status = |path: &str| -> String {
            let node = v.pointer(path).cloned().unwrap_or_default();
            match node {
                serde_json::Value::String(s) => s,
                serde_json::Value::Object(m) => m.keys().next().cloned().unwrap_or_default(),
                other => other.to_string(),
            }
        };
        let mut out = vec![
            format!("family          {}", self.family.id),
            format!("ideals          {} nonempty (truncated: {})", self.ideals.nonempty, self.ideals.truncated),
            format!("independence    {}", status("/independence")),
            format!("toeplitz        {}", status("/conditions/toeplitz/status")),
            format!("quasi-lattice   {}", status("/conditions/quasi_lattice/status")),
            format!("left ore        {}", status("/conditions/left_ore/status")),
            format!("left reversible {}", status("/conditions/left_reversible/status")),
            format!("hull            {} elements to depth {}", self.hull.size, self.hull.depth),
        ];
        if let Some(s) = &self.spectrum {
            out.push(format!(
                "spectrum        {} filters, {} ultrafilters, {} boundary",
                s.filters, s.ultrafilters, s.boundary_size
            ));
        }
        if self.checklist.is_some() {
            out.push(format!("checklist       {}", status("/checklist/verdict")));
        }
        out.join("\n")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub path: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.ok)
    }

    fn push(&mut self, path: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check { path: path.into(), ok, detail: detail.into() });
    }
}

/// Replays every witness of `d` against the family rebuilt to `depth`.
pub fn replay_witnesses(d: &Dossier, depth: usize) -> Result<VerifyReport> {
    let amb = catalog::from_kind(&d.family.id, d.family.kind.clone())?;
    let fam = closure_to_depth(&amb, depth, &d.params.caps);
    let mut r = VerifyReport::default();
    replay_into(&amb, &fam, d, &mut r);
    Ok(r)
}

fn replay_into(amb: &Ambient, fam: &IdealFamily, d: &Dossier, r: &mut VerifyReport) {
    if let Independence::Dependent { ideal, cover } = &d.independence {
        r.push("independence", check_dependence(amb, ideal, cover), format!("{ideal} as a union of proper members"));
    }
    let conds = [
        ("conditions.toeplitz", &d.conditions.toeplitz),
        ("conditions.quasi_lattice", &d.conditions.quasi_lattice),
        ("conditions.left_ore", &d.conditions.left_ore),
        ("conditions.left_reversible", &d.conditions.left_reversible),
    ];
    for (path, c) in conds {
        if let Status::Fails { witness } | Status::UnknownToBudget { witness } = &c.status {
            let detail = serde_json::to_string(witness).expect("serializes");
            r.push(path, toeplitz::check_witness(amb, witness), detail);
        }
    }
    for (i, g) in d.g0.iter().enumerate() {
        if let G0Verdict::NotInG0 { ideal, side } = &g.verdict {
            r.push(format!("g0[{i}]"), groupoid::check_g0_witness(amb, &g.g, ideal, *side), format!("{} misses {ideal}", g.g));
        }
    }
    if let Some(LocalBoundary::Witness(w)) = &d.local_boundary {
        r.push("local_boundary", groupoid::check_compression_witness(amb, w), format!("g' = {}", w.g_prime));
    }
    if let Some(c) = &d.checklist {
        for (i, s) in c.g0_samples.iter().enumerate() {
            if let TopFree::Moved { filter, h, ideal } = &s.top_free {
                let ok = groupoid::check_moved_witness(amb, fam, &s.g, filter, h, ideal);
                r.push(format!("checklist.g0_samples[{i}]"), ok, format!("{} moves a boundary point", s.g));
            }
        }
    }
}

/// Parses, checks canonical form and version, replays witnesses, and when
/// all of that passes at the recorded depth, recomputes the whole dossier.
pub fn verify(text: &str, depth: Option<usize>) -> VerifyReport {
    let mut r = VerifyReport::default();
    let d: Dossier = match serde_json::from_str(text) {
        Ok(d) => d,
        Err(e) => {
            r.push("parse", false, e.to_string());
            return r;
        }
    };
    r.push("parse", true, "");
    let canonical = d.to_canonical() == text;
    r.push("canonical", canonical, if canonical { "" } else { "bytes differ from canonical serialization" });
    r.push("digest", d.digest == d.compute_digest(), "");
    r.push("schema", d.schema == SCHEMA, d.schema.clone());
    if d.tool_version != TOOL_VERSION {
        r.push("tool_version", true, format!("warning: written by {}, verifying with {TOOL_VERSION}", d.tool_version));
    }
    let amb = match catalog::lookup(&d.family.id) {
        Ok(a) if a.kind == d.family.kind => a,
        Ok(_) => {
            r.push("family", false, "id and kind disagree");
            return r;
        }
        Err(e) => {
            r.push("family", false, e.to_string());
            return r;
        }
    };
    let depth = depth.unwrap_or(d.params.depth);
    let fam = closure_to_depth(&amb, depth, &d.params.caps);
    replay_into(&amb, &fam, &d, &mut r);
    if depth == d.params.depth && r.ok() {
        let mut fresh = analyze(&amb, &d.params);
        fresh.wall_clock_ms = d.wall_clock_ms;
        let fresh = fresh.sealed();
        let found = serde_json::to_value(&d).expect("serializes");
        let want = serde_json::to_value(&fresh).expect("serializes");
        match first_difference("", &found, &want) {
            None => r.push("recompute", true, ""),
            Some(path) => r.push(format!("recompute{path}"), false, "recorded value differs from recomputation"),
        }
    }
    r
}

fn first_difference(path: &str, a: &serde_json::Value, b: &serde_json::Value) -> Option<String> {
    use serde_json::Value;
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            for (k, v) in x {
                let p = format!("{path}.{k}");
                match y.get(k) {
                    Some(w) => {
                        if let Some(d) = first_difference(&p, v, w) {
                            return Some(d);
                        }
                    }
                    None => return Some(p),
                }
            }
            y.keys().find(|k| !x.contains_key(*k)).map(|k| format!("{path}.{k}"))
        }
        (Value::Array(x), Value::Array(y)) => {
            for (i, (v, w)) in x.iter().zip(y).enumerate() {
                if let Some(d) = first_difference(&format!("{path}[{i}]"), v, w) {
                    return Some(d);
                }
            }
            (x.len() != y.len()).then(|| path.to_string())
        }
        _ => (a != b).then(|| path.to_string()),
    }
}

pub fn read(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Verdict-level failures recorded in a dossier, for exit codes.
pub fn has_failure(d: &Dossier) -> bool {
    matches!(d.independence, Independence::Dependent { .. })
        || matches!(d.checklist.as_ref().map(|c| &c.verdict), Some(Verdict::ChecklistFails { .. }))
}
