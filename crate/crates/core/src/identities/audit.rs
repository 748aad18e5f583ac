//! Exact-arithmetic audit of printed identities.
//!
//! Each [`IdentityCheck`] produces pairs (true value, printed value) per
//! index and sample. When a pair disagrees, the auditor looks for a single
//! monomial `p^a q^b` per index, `|a|, |b| ≤ max(n², 1)`, that turns the
//! printed value into the true one for every sample and every parameter
//! pair, and reports the smallest one.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::blossom::{
    blossom_evaluate, blossom_from_polynomial, dual_control_points, elementary_symmetric,
    recursive_blossom_evaluate, validate_params, Polynomial,
};
use crate::curve::algorithms::{
    Evaluator, FirstDeCasteljau, PermutedEvaluator, SecondDeCasteljau,
};
use crate::curve::PqBezierCurve;
use crate::error::{PqError, Result};
use crate::identities::{marsden_coefficient, marsden_coefficients_by_blossom, monomial_coefficients, MarsdenForm};
use crate::point::Point;
use crate::pq::{bernstein_basis, bernstein_basis_all, pq_binomial, pq_integer, tri, PqParams};
use crate::scalar::{format_rational, Rational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    PassAsPrinted,
    PassWithCorrection,
    Fail,
    /// Every parameter pair violates the identity's preconditions.
    NotApplicable,
}

impl Verdict {
    pub fn tag(self) -> &'static str {
        match self {
            Verdict::PassAsPrinted => "pass_as_printed",
            Verdict::PassWithCorrection => "pass_with_correction",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not_applicable",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// The factor `p^p_exp q^q_exp` that multiplies the printed side at `index`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correction {
    pub index: String,
    pub p_exp: i64,
    pub q_exp: i64,
}

impl Correction {
    pub fn is_identity(&self) -> bool {
        self.p_exp == 0 && self.q_exp == 0
    }

    pub fn monomial(&self) -> String {
        monomial(self.p_exp, self.q_exp)
    }
}

fn monomial(a: i64, b: i64) -> String {
    let part = |name: &str, e: i64| match e {
        0 => None,
        1 => Some(name.to_string()),
        e => Some(format!("{name}^{e}")),
    };
    let parts: Vec<_> = [part("p", a), part("q", b)].into_iter().flatten().collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// Where the printed form first disagrees with the true value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub p: String,
    pub q: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<String>>,
    pub expected: String,
    pub printed: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.n)?;
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        write!(f, " p={} q={}", self.p, self.q)?;
        for (name, v) in [("t", &self.t), ("x", &self.x), ("r", &self.r)] {
            if let Some(v) = v {
                write!(f, " {name}={v}")?;
            }
        }
        if let Some(u) = &self.u {
            write!(f, " u=({})", u.join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub identity_id: String,
    pub degree_range: [usize; 2],
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correction: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<Correction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub n_max: usize,
    /// Parameter pairs as `[p, q]` rational strings.
    pub params: Vec<[String; 2]>,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn has_failures(&self) -> bool {
        self.entries.iter().any(|e| e.verdict == Verdict::Fail)
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.entries.iter().filter(|e| e.verdict == verdict).count()
    }

    pub fn entries_for<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a AuditEntry> + 'a {
        self.entries.iter().filter(move |e| e.identity_id == id)
    }

    pub fn entry(&self, id: &str, n: usize) -> Option<&AuditEntry> {
        self.entries.iter().find(|e| e.identity_id == id && e.degree_range[0] == n)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<_> = self.params.iter().map(|[p, q]| format!("({p},{q})")).collect();
        writeln!(f, "audit n_max={} params={}", self.n_max, params.join(" "))?;
        let rows: Vec<[String; 5]> = self
            .entries
            .iter()
            .map(|e| {
                [
                    e.identity_id.clone(),
                    e.degree_range[0].to_string(),
                    e.verdict.to_string(),
                    e.correction.clone().unwrap_or_else(|| "-".into()),
                    e.witness.as_ref().map_or_else(|| "-".into(), ToString::to_string),
                ]
            })
            .collect();
        let header = ["identity", "n", "verdict", "correction", "witness"];
        let mut width = header.map(str::len);
        for row in &rows {
            for (w, cell) in width.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: [&str; 5]| {
            let mut s = String::new();
            for (i, (c, w)) in cells.iter().zip(width).enumerate() {
                if i == 4 {
                    s.push_str(c);
                } else {
                    s.push_str(&format!("{c:<w$}  "));
                }
            }
            s.trim_end().to_string()
        };
        writeln!(f, "{}", line(header))?;
        for (row, e) in rows.iter().zip(&self.entries) {
            writeln!(f, "{}", line([&row[0], &row[1], &row[2], &row[3], &row[4]]))?;
            if let Some(note) = &e.note {
                writeln!(f, "    note: {note}")?;
            }
        }
        writeln!(
            f,
            "summary: {} pass_as_printed, {} pass_with_correction, {} fail, {} not_applicable",
            self.count(Verdict::PassAsPrinted),
            self.count(Verdict::PassWithCorrection),
            self.count(Verdict::Fail),
            self.count(Verdict::NotApplicable),
        )
    }
}

/// Evaluation point attached to a comparison.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Sample {
    pub t: Option<Rational>,
    pub x: Option<Rational>,
    pub r: Option<Rational>,
    pub u: Option<Vec<Rational>>,
}

impl Sample {
    pub fn at_t(t: &Rational) -> Self {
        Sample { t: Some(t.clone()), ..Default::default() }
    }

    pub fn at_u(u: &[Rational]) -> Self {
        Sample { u: Some(u.to_vec()), ..Default::default() }
    }
}

/// True and printed values of one instance of an identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub index: usize,
    pub sample: Sample,
    pub actual: Rational,
    pub printed: Rational,
}

pub trait IdentityCheck: Send + Sync {
    fn id(&self) -> &'static str;

    fn min_degree(&self) -> usize {
        0
    }

    fn max_degree(&self) -> Option<usize> {
        None
    }

    fn index_label(&self, _n: usize, index: usize) -> String {
        format!("k={index}")
    }

    /// All comparisons at degree `n`, or `None` when `params` violate the
    /// identity's preconditions.
    fn compare(&self, n: usize, params: &PqParams<Rational>) -> Result<Option<Vec<Comparison>>>;

    /// Extra findings for the report.
    fn note(
        &self,
        _n: usize,
        _params: &[PqParams<Rational>],
        _factors: &[Correction],
    ) -> Result<Option<String>> {
        Ok(None)
    }
}

/// Identity checks keyed by id.
pub struct CheckRegistry {
    checks: BTreeMap<&'static str, Box<dyn IdentityCheck>>,
}

impl fmt::Debug for CheckRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.checks.keys()).finish()
    }
}

impl Default for CheckRegistry {
    fn default() -> Self {
        Self::with_defaults()
    }
}

impl CheckRegistry {
    pub fn empty() -> Self {
        CheckRegistry { checks: BTreeMap::new() }
    }

    pub fn with_defaults() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(PartitionOfUnity));
        reg.register(Box::new(DegreeRelation));
        reg.register(Box::new(DegreeElevation));
        reg.register(Box::new(ApexNormalization::Dc1));
        reg.register(Box::new(ApexNormalization::Dc2));
        reg.register(Box::new(ApexNormalization::Permuted));
        reg.register(Box::new(PhiClosedForm));
        reg.register(Box::new(CubicBlossomExamples));
        reg.register(Box::new(RecursiveBlossomScaling));
        reg.register(Box::new(Marsden));
        reg.register(Box::new(MonomialRepresentation));
        reg.register(Box::new(Reparametrization));
        reg
    }

    pub fn register(&mut self, check: Box<dyn IdentityCheck>) {
        self.checks.insert(check.id(), check);
    }

    pub fn ids(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.checks.keys().copied()
    }

    pub fn get(&self, id: &str) -> Option<&dyn IdentityCheck> {
        self.checks.get(id).map(|c| c.as_ref())
    }

    /// Runs every registered check.
    pub fn run(&self, n_max: usize, params: &[PqParams<Rational>]) -> Result<AuditReport> {
        let ids: Vec<_> = self.ids().collect();
        self.run_selected(&ids, n_max, params)
    }

    /// Runs the named checks; checks run on separate threads, and the
    /// report is sorted by `(identity_id, n)`.
    pub fn run_selected(
        &self,
        ids: &[&str],
        n_max: usize,
        params: &[PqParams<Rational>],
    ) -> Result<AuditReport> {
        let checks = ids
            .iter()
            .map(|id| self.get(id).ok_or_else(|| PqError::Unsupported(format!("unknown identity {id:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let results: Vec<Result<Vec<AuditEntry>>> = std::thread::scope(|scope| {
            let handles: Vec<_> = checks
                .iter()
                .map(|check| {
                    scope.spawn(move || {
                        let hi = check.max_degree().map_or(n_max, |m| m.min(n_max));
                        (check.min_degree()..=hi)
                            .map(|n| audit_one(*check, n, params))
                            .collect::<Result<Vec<_>>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().unwrap_or_else(|_| Err(PqError::Unsupported("audit check panicked".into()))))
                .collect()
        });
        let mut entries = Vec::new();
        for r in results {
            entries.extend(r?);
        }
        entries.sort_by(|a, b| (&a.identity_id, a.degree_range).cmp(&(&b.identity_id, b.degree_range)));
        Ok(AuditReport {
            n_max,
            params: params
                .iter()
                .map(|pq| [format_rational(&pq.p), format_rational(&pq.q)])
                .collect(),
            entries,
        })
    }
}

/// The default audit parameter list.
pub fn default_audit_params() -> Vec<PqParams<Rational>> {
    [((2, 1), (1, 1)), ((3, 1), (2, 1)), ((3, 2), (1, 2)), ((1, 1), (1, 2)), ((5, 4), (3, 4))]
        .into_iter()
        .map(|((pn, pd), (qn, qd))| PqParams::new(Rational::from_ratio(pn, pd), Rational::from_ratio(qn, qd)))
        .collect()
}

/// Runs every default check for `n = 0..=n_max`. Requires exact scalars.
pub fn audit_all<S: Scalar>(n_max: usize, params: &[PqParams<S>]) -> Result<AuditReport> {
    let exact = params
        .iter()
        .map(|pq| match (pq.p.to_rational(), pq.q.to_rational()) {
            (Some(p), Some(q)) => Ok(PqParams::new(p, q)),
            _ => Err(PqError::ExactRequired),
        })
        .collect::<Result<Vec<_>>>()?;
    if S::MODE != crate::scalar::Mode::Exact {
        return Err(PqError::ExactRequired);
    }
    CheckRegistry::with_defaults().run(n_max, &exact)
}

/// Every `(a, b)` with `|a|, |b| ≤ bound` and `p^a q^b = ratio`.
fn candidates(params: &PqParams<Rational>, ratio: &Rational, bound: i64) -> BTreeSet<(i64, i64)> {
    let mut q_pows: HashMap<Rational, Vec<i64>> = HashMap::new();
    for b in -bound..=bound {
        if let Ok(v) = params.q.powi(b) {
            q_pows.entry(v).or_default().push(b);
        }
    }
    let mut out = BTreeSet::new();
    for a in -bound..=bound {
        let Ok(pa) = params.p.powi(a) else { continue };
        if pa.is_zero() {
            continue;
        }
        if let Some(bs) = q_pows.get(&(ratio.clone() / pa)) {
            out.extend(bs.iter().map(|&b| (a, b)));
        }
    }
    out
}

fn witness_for(n: usize, params: &PqParams<Rational>, c: &Comparison) -> Witness {
    let fmt = |v: &Option<Rational>| v.as_ref().map(format_rational);
    Witness {
        n,
        k: Some(c.index),
        p: format_rational(&params.p),
        q: format_rational(&params.q),
        t: fmt(&c.sample.t),
        x: fmt(&c.sample.x),
        r: fmt(&c.sample.r),
        u: c.sample.u.as_ref().map(|u| u.iter().map(format_rational).collect()),
        expected: format_rational(&c.actual),
        printed: format_rational(&c.printed),
    }
}

fn audit_one(check: &dyn IdentityCheck, n: usize, params: &[PqParams<Rational>]) -> Result<AuditEntry> {
    let bound = (n * n).max(1) as i64;
    // per index: intersected candidate set, None while unconstrained
    let mut fits: BTreeMap<usize, Option<BTreeSet<(i64, i64)>>> = BTreeMap::new();
    let mut broken: BTreeSet<usize> = BTreeSet::new();
    let mut witness: Option<(usize, Witness)> = None;
    let mut applicable = false;

    for pq in params {
        let Some(cmps) = check.compare(n, pq)? else { continue };
        applicable = true;
        let mut ratios: BTreeMap<usize, Option<Rational>> = BTreeMap::new();
        for c in &cmps {
            let slot = ratios.entry(c.index).or_insert(None);
            if c.actual != c.printed && witness.as_ref().is_none_or(|(i, _)| c.index < *i) {
                witness = Some((c.index, witness_for(n, pq, c)));
            }
            match (c.actual.is_zero(), c.printed.is_zero()) {
                (true, true) => {}
                (false, false) => {
                    let r = c.actual.clone() / c.printed.clone();
                    match slot {
                        Some(prev) if *prev != r => {
                            broken.insert(c.index);
                        }
                        Some(_) => {}
                        None => *slot = Some(r),
                    }
                }
                _ => {
                    broken.insert(c.index);
                }
            }
        }
        for (index, ratio) in ratios {
            let fit = fits.entry(index).or_insert(None);
            if let Some(ratio) = ratio {
                let found = candidates(pq, &ratio, bound);
                *fit = Some(match fit.take() {
                    None => found,
                    Some(prev) => prev.intersection(&found).copied().collect(),
                });
            }
        }
    }

    let mut entry = AuditEntry {
        identity_id: check.id().to_string(),
        degree_range: [n, n],
        verdict: Verdict::NotApplicable,
        correction: None,
        factors: Vec::new(),
        witness: None,
        note: None,
    };
    if !applicable {
        entry.note = Some("no parameter pair satisfies the preconditions".into());
        return Ok(entry);
    }

    let mut factors = Vec::new();
    let mut unfixable = Vec::new();
    for (index, fit) in &fits {
        let label = check.index_label(n, *index);
        let best = match fit {
            None => Some((0, 0)),
            Some(set) => set
                .iter()
                .min_by_key(|(a, b)| (a.abs() + b.abs(), a.abs(), b.abs(), *a, *b))
                .copied(),
        };
        match best {
            Some((a, b)) if !broken.contains(index) => {
                factors.push(Correction { index: label, p_exp: a, q_exp: b })
            }
            _ => unfixable.push(label),
        }
    }

    entry.witness = witness.map(|(_, w)| w);
    if !unfixable.is_empty() {
        entry.verdict = Verdict::Fail;
        entry.correction = Some(format!("no p^a q^b correction at {}", unfixable.join(", ")));
    } else if factors.iter().all(Correction::is_identity) {
        entry.verdict = Verdict::PassAsPrinted;
        entry.witness = None;
        factors.clear();
    } else {
        entry.verdict = Verdict::PassWithCorrection;
        entry.correction = Some(describe(&factors));
    }
    entry.note = check.note(n, params, &factors)?;
    entry.factors = factors;
    Ok(entry)
}

fn describe(factors: &[Correction]) -> String {
    let first = &factors[0];
    if factors.iter().all(|f| f.p_exp == first.p_exp && f.q_exp == first.q_exp) {
        format!("multiply printed side by {}", first.monomial())
    } else {
        let parts: Vec<_> = factors
            .iter()
            .map(|f| format!("{}: {}", f.index, f.monomial()))
            .collect();
        format!("multiply printed side by {}", parts.join("; "))
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn t_samples() -> Vec<Rational> {
    vec![q(0, 1), q(1, 1), q(1, 3), q(2, 7), q(3, 4), q(-1, 2), q(5, 4)]
}

fn x_samples() -> Vec<Rational> {
    vec![q(1, 5), q(2, 3), q(-3, 4), q(7, 2)]
}

fn u_samples(n: usize) -> Vec<Vec<Rational>> {
    (0..3i64)
        .map(|s| (0..n as i64).map(|i| q((i + 1) * (s + 2) - 3, i + s + 3)).collect())
        .collect()
}

fn nonzero(params: &PqParams<Rational>) -> bool {
    !params.p.is_zero() && !params.q.is_zero()
}

fn blossom_ok(n: usize, params: &PqParams<Rational>) -> bool {
    nonzero(params) && validate_params(n, params).ok
}

/// `Σ_k B_k^n(t) = 1`.
struct PartitionOfUnity;

impl IdentityCheck for PartitionOfUnity {
    fn id(&self) -> &'static str {
        "partition_of_unity"
    }

    fn compare(&self, n: usize, params: &PqParams<Rational>) -> Result<Option<Vec<Comparison>>> {
        t_samples()
            .iter()
            .map(|t| {
                Ok(Comparison {
                    index: 0,
                    sample: Sample::at_t(t),
                    actual: bernstein_basis_all(n, t, params)?.into_iter().sum(),
                    printed: Rational::one(),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }
}

/// `B_k^n` as a combination of `B_k^{n+1}` and `B_{k+1}^{n+1}`.
struct DegreeRelation;

impl IdentityCheck for DegreeRelation {
    fn id(&self) -> &'static str {
        "degree_relation"
    }

    fn compare(&self, n: usize, params: &PqParams<Rational>) -> Result<Option<Vec<Comparison>>> {
        if params.p.is_zero() {
            return Ok(None);
        }
        let top = pq_integer(n + 1, params);
        if top.is_zero() {
            return Ok(None);
        }
        let p = &params.p;
        let mut out = Vec::new();
        for k in 0..=n {
            let alpha = p.powi(k as i64 - n as i64)? * pq_integer(n + 1 - k, params) / top.clone();
            let beta = p.powi(-(n as i64))?
                * (Rational::one() - p.pown(k as u32 + 1) * pq_integer(n - k, params) / top.clone());
            for t in t_samples() {
                let printed = alpha.clone() * bernstein_basis(n + 1, k, &t, params)?
                    + beta.clone() * bernstein_basis(n + 1, k + 1, &t, params)?;
                out.push(Comparison {
                    index: k,
                    actual: bernstein_basis(n, k, &t, params)?,
                    printed,
                    sample: Sample::at_t(&t),
                });
            }
        }
        Ok(Some(out))
    }
}

/// Elevated control points read as `P' = P*/p^n`, per unit control vector.
struct DegreeElevation;

impl IdentityCheck for DegreeElevation {
    fn id(&self) -> &'static str {
        "degree_elevation"
    }

    fn index_label(&self, _n: usize, index: usize) -> String {
        format!("P_{index}")
    }

    fn compare(&self, n: usize, params: &PqParams<Rational>) -> Result<Option<Vec<Comparison>>> {
        let top = pq_integer(n + 1, params);
        if params.p.is_zero() || top.is_zero() {
            return Ok(None);
        }
        let scale = params.p.powi(-(n as i64))?;
        let mut out = Vec::new();
        for j in 0..=n {
            let unit = |i: usize| if i == j { Rational::one() } else { Rational::zero() };
            let elevated: Vec<Rational> = (0..=n + 1)
                .map(|k| {
                    let a = params.p.pown(k as u32) * pq_integer(n + 1 - k, params) / top.clone();
                    let prev = if k >= 1 { unit(k - 1) } else { Rational::zero() };
                    let cur = if k <= n { unit(k) } else { Rational::zero() };
                    ((Rational::one() - a.clone()) * prev + a * cur) * scale.clone()
                })
                .collect();
            for t in t_samples() {
                let basis = bernstein_basis_all(n + 1, &t, params)?;
                out.push(Comparison {
                    index: j,
                    actual: bernstein_basis(n, j, &t, params)?,
                    printed: elevated.iter().zip(basis).map(|(c, b)| c.clone() * b).sum(),
                    sample: Sample::at_t(&t),
                });
            }
        }
        Ok(Some(out))
    }
}

/// The corner-cutting apex read as the curve point.
enum ApexNormalization {
    Dc1,
    Dc2,
    Permuted,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                (1..=n).filter(|v| !prefix.contains(v)).map(|v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                }).collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

impl IdentityCheck for ApexNormalization {
    fn id(&self) -> &'static str {
        match self {
            ApexNormalization::Dc1 => "dc1_normalization",
            ApexNormalization::Dc2 => "dc2_normalization",
            ApexNormalization::Permuted => "permuted_normalization",
        }
    }

    fn index_label(&self, n: usize, index: usize) -> String {
        match self {
            ApexNormalization::Permuted => {
                let sigma: Vec<_> = permutations(n)[index].iter().map(ToString::to_string).collect();
                format!("sigma=[{}]", sigma.join(","))
            }
            _ => "apex".into(),
        }
    }

    fn compare(&self, n: usize, params: &PqParams<Rational>) -> Result<Option<Vec<Comparison>>> {
        if params.require_positive().is_err() {
            return Ok(None);
        }
        let values = [3, -1, 4, 1, 5, -9, 2, 6, -5, 3, 5];
        let pts = (0..=n).map(|i| Point::scalar(q(values[i % values.len()], 1))).collect();
        let curve = PqBezierCurve::new(pts, params.clone())?;
        let evaluators: Vec<Box<dyn Evaluator<Rational>>> = match self {
            ApexNormalization::Dc1 => vec![Box::new(FirstDeCasteljau)],
            ApexNormalization::Dc2 => vec![Box::new(SecondDeCasteljau)],
            ApexNormalization::Permuted => permutations(n)
                .into_iter()
                .map(|s| Ok(Box::new(PermutedEvaluator::new(s)?) as Box<dyn Evaluator<Rational>>))
                .collect::<Result<_>>()?,
        };
        let mut out = Vec::new();
        for (index, ev) in evaluators.iter().enumerate() {
            for t in t_samples() {
                out.push(Comparison {
                    index,
                    actual: ev.triangle(&curve, &t)?.apex().0[0].clone(),
                    printed: curve.evaluate(&t)?.0[0].clone(),
                    sample: Sample::at_t(&t),
                });
            }
        }
        Ok(Some(out))
    }
}

/// Closed form of `φ_{n,k}` on the (p,q)-diagonal, `k = 1..=n`.
struct PhiClosedForm;

fn phi_candidate(n: usize, k: usize, params: &PqParams<Rational>) -> Rational {
    (params.p.clone() * params.q.clone()).pown(tri(k)) * pq_binomial(n, k, params)
}

impl IdentityCheck for PhiClosedForm {
    fn id(&self) -> &'static str {
        "phi_closed_form"
    }

    fn min_degree(&self) -> usize {
        1
    }

    fn compare(&self, n: usize, params: &PqParams<Rational>) -> Result<Option<Vec<Comparison>>> {
        let diag = params.diagonal(n);
        Ok(Some(
            (1..=n)
                .map(|k| Comparison {
                    index: k,
                    sample: Sample::default(),
                    actual: elementary_symmetric(&diag, k),
                    printed: params.p.pown(tri(n - k)) * params.q.pown(tri(k)) * pq_binomial(n, k, params),
                })
                .collect(),
        ))
    }

    fn note(&self, n: usize, params: &[PqParams<Rational>], _: &[Correction]) -> Result<Option<String>> {
        let holds = params.iter().all(|pq| {
            let diag = pq.diagonal(n);
            (1..=n).all(|k| elementary_symmetric(&diag, k) == phi_candidate(n, k, pq))
        });
        Ok(Some(if holds {
            "(pq)^{k(k-1)/2}[n k] matches the expansion exactly".into()
        } else {
            "(pq)^{k(k-1)/2}[n k] does not match the expansion".into()
        }))
    }
}

/// The four cubic monomial blossoms `1/p^3`, `Σu/(p(p²+pq+q²))`,
/// `Σu_iu_j/(q(p²+pq+q²))` and `u_1u_2u_3/q^3`.
struct CubicBlossomExamples;

impl IdentityCheck for CubicBlossomExamples {
    fn id(&self) -> &'static str {
        "cubic_blossom_examples"
    }

    fn min_degree(&self) -> usize {
        3
    }

    fn max_degree(&self) -> Option<usize> {
        Some(3)
    }

    fn index_label(&self, _n: usize, index: usize) -> String {
        format!("t^{index}")
    }

    fn compare(&self, n: usize, params: &PqParams<Rational>) -> Result<Option<Vec<Comparison>>> {
        if !blossom_ok(n, params) {
            return Ok(None);
        }
        let (p, qq) = (&params.p, &params.q);
        let shell = p.pown(2) + p.clone() * qq.clone() + qq.pown(2);
        let denominators = [p.pown(3), p.clone() * shell.clone(), qq.clone() * shell, qq.pown(3)];
        let mut out = Vec::new();
        for k in 0..=3 {
            let mut coeffs = vec![Rational::zero(); 4];
            coeffs[k] = Rational::one();
            let form = blossom_from_polynomial(&Polynomial::from_scalars(coeffs), params)?;
            for u in u_samples(3) {
                out.push(Comparison {
                    index: k,
                    actual: blossom_evaluate(&form, &u)?.0[0].clone(),
                    printed: elementary_symmetric(&u, k) / denominators[k].clone(),
                    sample: Sample::at_u(&u),
                });
            }
        }
        Ok(Some(out))
    }
}

/// Apex of the triangular blossom recurrence read as `s(u)`, per monomial.
struct RecursiveBlossomScaling;

fn monomial_form(n: usize, k: usize, params: &PqParams<Rational>) -> Result<crate::blossom::BlossomForm<Rational>> {
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[k] = Rational::one();
    blossom_from_polynomial(&Polynomial::from_scalars(coeffs), params)
}

impl IdentityCheck for RecursiveBlossomScaling {
    fn id(&self) -> &'static str {
        "recursive_blossom_scaling"
    }

    fn min_degree(&self) -> usize {
        1
    }

    fn index_label(&self, _n: usize, index: usize) -> String {
        format!("t^{index}")
    }

    fn compare(&self, n: usize, params: &PqParams<Rational>) -> Result<Option<Vec<Comparison>>> {
        if !blossom_ok(n, params) {
            return Ok(None);
        }
        let mut out = Vec::new();
        for k in 0..=n {
            let form = monomial_form(n, k, params)?;
            let controls = dual_control_points(&form);
            for u in u_samples(n) {
                out.push(Comparison {
                    index: k,
                    actual: recursive_blossom_evaluate(&controls, &u, params)?.0[0].clone(),
                    printed: blossom_evaluate(&form, &u)?.0[0].clone(),
                    sample: Sample::at_u(&u),
                });
            }
        }
        Ok(Some(out))
    }

    fn note(&self, n: usize, params: &[PqParams<Rational>], _: &[Correction]) -> Result<Option<String>> {
        let mut checked = 0;
        for pq in params.iter().filter(|pq| blossom_ok(n, pq)) {
            let scale = pq.p.pown(n as u32 - 1);
            for k in 0..=n {
                let form = monomial_form(n, k, pq)?;
                let controls = dual_control_points(&form);
                for u in u_samples(n) {
                    let scaled: Vec<_> = u.iter().map(|v| v.clone() * scale.clone()).collect();
                    if recursive_blossom_evaluate(&controls, &u, pq)? != blossom_evaluate(&form, &scaled)? {
                        return Ok(Some(format!("Q(u) = s(p^{{n-1}} u) refuted for p={} q={}", pq.p, pq.q)));
                    }
                    checked += 1;
                }
            }
        }
        Ok((checked > 0).then(|| "Q(u) = s(p^{n-1} u) confirmed".to_string()))
    }
}

/// Bernstein coefficients of `Π (p^{i-1}x - q^{i-1}t)` against the printed
/// Marsden terms.
struct Marsden;

impl IdentityCheck for Marsden {
    fn id(&self) -> &'static str {
        "marsden"
    }

    fn min_degree(&self) -> usize {
        1
    }

    fn index_label(&self, _n: usize, index: usize) -> String {
        format!("j={index}")
    }

    fn compare(&self, n: usize, params: &PqParams<Rational>) -> Result<Option<Vec<Comparison>>> {
        if !blossom_ok(n, params) {
            return Ok(None);
        }
        let mut out = Vec::new();
        for x in x_samples() {
            let actual = marsden_coefficients_by_blossom(n, params, &x)?;
            for (j, a) in actual.into_iter().enumerate() {
                out.push(Comparison {
                    index: j,
                    actual: a,
                    printed: marsden_coefficient(n, j, params, &x, MarsdenForm::AsPrinted)?,
                    sample: Sample { x: Some(x.clone()), ..Default::default() },
                });
            }
        }
        out.sort_by_key(|c| c.index);
        Ok(Some(out))
    }

    fn note(&self, n: usize, _: &[PqParams<Rational>], factors: &[Correction]) -> Result<Option<String>> {
        let expected = |j: usize| (n as i64 - 1) * (n as i64 - 2 * j as i64) / 2;
        let matches = factors.is_empty() && (0..=n).all(|j| expected(j) == 0)
            || factors.len() == n + 1
                && factors.iter().enumerate().all(|(j, f)| f.q_exp == 0 && f.p_exp == expected(j));
        Ok(Some(if matches {
            "per-term factor p^{(n-1)(n-2j)/2}".into()
        } else {
            "per-term factors differ from p^{(n-1)(n-2j)/2}".into()
        }))
    }
}

/// `t^i = Σ_{k≥i} p^{i(n-k)} [k i]/[n i] B_k^n(t)`.
struct MonomialRepresentation;

impl IdentityCheck for MonomialRepresentation {
    fn id(&self) -> &'static str {
        "monomial_representation"
    }

    fn index_label(&self, _n: usize, index: usize) -> String {
        format!("i={index}")
    }

    fn compare(&self, n: usize, params: &PqParams<Rational>) -> Result<Option<Vec<Comparison>>> {
        if (0..=n).any(|i| pq_binomial(n, i, params).is_zero()) {
            return Ok(None);
        }
        let mut out = Vec::new();
        for i in 0..=n {
            let w = monomial_coefficients(n, i, params)?;
            for t in t_samples() {
                let basis = bernstein_basis_all(n, &t, params)?;
                out.push(Comparison {
                    index: i,
                    actual: t.pown(i as u32),
                    printed: w.iter().zip(basis).map(|(a, b)| a.clone() * b).sum(),
                    sample: Sample::at_t(&t),
                });
            }
        }
        Ok(Some(out))
    }
}

/// `B_k^n(rt) = Σ_{i≥k} B_k^i(r) B_i^n(t)`.
struct Reparametrization;

impl IdentityCheck for Reparametrization {
    fn id(&self) -> &'static str {
        "reparametrization"
    }

    fn compare(&self, n: usize, params: &PqParams<Rational>) -> Result<Option<Vec<Comparison>>> {
        let mut out = Vec::new();
        for k in 0..=n {
            for r in [q(1, 2), q(1, 3), q(3, 4)] {
                for t in [q(2, 5), q(5, 7), q(-1, 3)] {
                    let basis = bernstein_basis_all(n, &t, params)?;
                    let printed = (k..=n)
                        .map(|i| Ok(bernstein_basis(i, k, &r, params)? * basis[i].clone()))
                        .sum::<Result<Rational>>()?;
                    out.push(Comparison {
                        index: k,
                        actual: bernstein_basis(n, k, &(r.clone() * t.clone()), params)?,
                        printed,
                        sample: Sample { t: Some(t.clone()), r: Some(r.clone()), ..Default::default() },
                    });
                }
            }
        }
        Ok(Some(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_formatting() {
        assert_eq!(monomial(0, 0), "1");
        assert_eq!(monomial(1, 0), "p");
        assert_eq!(monomial(-3, 2), "p^-3 q^2");
    }

    #[test]
    fn candidate_search_finds_all_representations() {
        let params = PqParams::new(q(2, 1), q(1, 1));
        let c = candidates(&params, &q(4, 1), 2);
        assert_eq!(c, [(2, -2), (2, -1), (2, 0), (2, 1), (2, 2)].into_iter().collect());
        let params = PqParams::new(q(3, 2), q(1, 2));
        assert_eq!(candidates(&params, &q(3, 1), 3), [(1, -1)].into_iter().collect());
        assert!(candidates(&params, &q(5, 1), 3).is_empty());
    }

    #[test]
    fn permutations_are_lexicographic() {
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(
            permutations(3),
            vec![vec![1, 2, 3], vec![1, 3, 2], vec![2, 1, 3], vec![2, 3, 1], vec![3, 1, 2], vec![3, 2, 1]]
        );
    }

    #[test]
    fn float_params_are_rejected() {
        let params = [PqParams::new(2.0, 1.0)];
        assert_eq!(audit_all(2, &params), Err(PqError::ExactRequired));
    }

    #[test]
    fn degree_relation_needs_p_to_the_n() {
        let report = CheckRegistry::with_defaults()
            .run_selected(&["degree_relation"], 2, &default_audit_params())
            .unwrap();
        assert_eq!(report.entry("degree_relation", 0).unwrap().verdict, Verdict::PassAsPrinted);
        for n in 1..=2 {
            let e = report.entry("degree_relation", n).unwrap();
            assert_eq!(e.verdict, Verdict::PassWithCorrection);
            assert!(e.factors.iter().all(|f| (f.p_exp, f.q_exp) == (n as i64, 0)));
        }
        let w = report.entry("degree_relation", 1).unwrap().witness.clone().unwrap();
        assert_eq!((w.n, w.k), (1, Some(0)));
    }

    #[test]
    fn q_case_only_passes_as_printed() {
        let params = [PqParams::new(q(1, 1), q(1, 2))];
        let report = audit_all(3, &params).unwrap();
        for e in &report.entries {
            assert!(
                matches!(e.verdict, Verdict::PassAsPrinted | Verdict::NotApplicable),
                "{} n={} {:?}",
                e.identity_id,
                e.degree_range[0],
                e.correction
            );
        }
    }

    #[test]
    fn inconsistent_ratios_fail() {
        struct Broken;
        impl IdentityCheck for Broken {
            fn id(&self) -> &'static str {
                "broken"
            }
            fn compare(&self, _: usize, _: &PqParams<Rational>) -> Result<Option<Vec<Comparison>>> {
                Ok(Some(vec![
                    Comparison { index: 0, sample: Sample::at_t(&q(0, 1)), actual: q(1, 1), printed: q(1, 1) },
                    Comparison { index: 0, sample: Sample::at_t(&q(1, 1)), actual: q(2, 1), printed: q(1, 1) },
                ]))
            }
        }
        let mut reg = CheckRegistry::empty();
        reg.register(Box::new(Broken));
        let report = reg.run(1, &default_audit_params()).unwrap();
        assert!(report.entries.iter().all(|e| e.verdict == Verdict::Fail));
        assert!(report.has_failures());
        assert_eq!(report.entries[0].witness.as_ref().unwrap().t.as_deref(), Some("1"));
    }
}
