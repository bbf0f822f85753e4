//! Lower and upper bounds on the distance Estrada index, the identities for
//! regular graphs of diameter at most two, and per-graph reports that
//! compare each bound with the observed value.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::estrada::{estrada_index, spectrum_series, EstradaValue, ExpSeries};
use crate::graph::{DegreeProfile, Graph};
use crate::metric::DistanceMatrix;
use crate::spectra::{adjacency_spectrum, distance_spectrum, Spectrum};

/// Relative tolerance for lower bounds and identities.
pub const REL_TOL: f64 = 1e-9;
/// Minimum slack for an inequality to count as strict.
pub const STRICT_SLACK: f64 = 1e-6;
/// Strictness threshold on the difference of logs, for log-domain reports.
pub const STRICT_LOG_SLACK: f64 = 1e-12;
/// Absolute tolerance for eigenvalue signatures and the largest-eigenvalue equality.
pub const EIGEN_TOL: f64 = 1e-8;
/// Absolute tolerance for the largest-eigenvalue lower bound.
pub const LAMBDA1_TOL: f64 = 1e-9;
/// Every graph that is neither complete nor complete multipartite has a
/// least distance eigenvalue below this.
pub const LEAST_EIGENVALUE_GAP: f64 = -2.383;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TheoremId {
    #[serde(rename = "T1_lower")]
    T1Lower,
    #[serde(rename = "T1_upper")]
    T1Upper,
    #[serde(rename = "T2_lower")]
    T2Lower,
    #[serde(rename = "T3_lower")]
    T3Lower,
    #[serde(rename = "T4_ng_lower")]
    T4NgLower,
    #[serde(rename = "T5_upper")]
    T5Upper,
    #[serde(rename = "T6_identity")]
    T6Identity,
    #[serde(rename = "L3_lambda1_lower")]
    L3Lambda1Lower,
    #[serde(rename = "L4_class")]
    L4Class,
}

impl TheoremId {
    pub const ALL: [TheoremId; 9] = [
        TheoremId::T1Lower,
        TheoremId::T1Upper,
        TheoremId::T2Lower,
        TheoremId::T3Lower,
        TheoremId::T4NgLower,
        TheoremId::T5Upper,
        TheoremId::T6Identity,
        TheoremId::L3Lambda1Lower,
        TheoremId::L4Class,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::T1Lower => "T1_lower",
            TheoremId::T1Upper => "T1_upper",
            TheoremId::T2Lower => "T2_lower",
            TheoremId::T3Lower => "T3_lower",
            TheoremId::T4NgLower => "T4_ng_lower",
            TheoremId::T5Upper => "T5_upper",
            TheoremId::T6Identity => "T6_identity",
            TheoremId::L3Lambda1Lower => "L3_lambda1_lower",
            TheoremId::L4Class => "L4_class",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One bound evaluated on one graph.
///
/// For lower bounds `slack = observed - bound_value`, for upper bounds
/// `slack = bound_value - observed`. When `log_domain` is set, `bound_value`
/// and `observed` are natural logs and `slack` is their difference.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub theorem_id: TheoremId,
    pub bound_value: f64,
    pub observed: f64,
    pub slack: f64,
    pub holds: bool,
    pub equality: bool,
    pub strict_required: bool,
    pub log_domain: bool,
}

/// A bound that does not apply to the graph, with the reason.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Omitted {
    pub theorem_id: TheoremId,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BoundSet {
    pub reports: Vec<BoundReport>,
    pub omitted: Vec<Omitted>,
}

impl BoundSet {
    pub fn get(&self, id: TheoremId) -> Option<&BoundReport> {
        self.reports.iter().find(|r| r.theorem_id == id)
    }

    pub fn omission(&self, id: TheoremId) -> Option<&str> {
        self.omitted
            .iter()
            .find(|o| o.theorem_id == id)
            .map(|o| o.reason.as_str())
    }
}

/// Structural class of a graph with respect to its least distance eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LeastEigenClass {
    /// `K_n`: least eigenvalue exactly -1.
    CompleteCase,
    /// `K_{n1,...,ns}`, `2 <= s <= n - 1`: least eigenvalue exactly -2.
    MultipartiteCase,
    /// Anything else: least eigenvalue below -2.383.
    Below2383,
}

impl LeastEigenClass {
    pub fn as_str(self) -> &'static str {
        match self {
            LeastEigenClass::CompleteCase => "CompleteCase",
            LeastEigenClass::MultipartiteCase => "MultipartiteCase",
            LeastEigenClass::Below2383 => "Below2383",
        }
    }

    /// Classification from structure alone.
    pub fn of(g: &Graph) -> Self {
        if g.is_complete() {
            LeastEigenClass::CompleteCase
        } else if g.order() >= 3 && g.is_complete_multipartite() {
            LeastEigenClass::MultipartiteCase
        } else {
            LeastEigenClass::Below2383
        }
    }

    fn signature(self) -> f64 {
        match self {
            LeastEigenClass::CompleteCase => -1.0,
            LeastEigenClass::MultipartiteCase => -2.0,
            LeastEigenClass::Below2383 => LEAST_EIGENVALUE_GAP,
        }
    }

    fn matches(self, least: f64) -> bool {
        match self {
            LeastEigenClass::Below2383 => least < LEAST_EIGENVALUE_GAP,
            _ => (least - self.signature()).abs() <= EIGEN_TOL,
        }
    }
}

fn need_two(g: &Graph) -> Result<()> {
    if g.order() < 2 {
        return Err(Error::TooFewVertices {
            need: 2,
            got: g.order(),
        });
    }
    Ok(())
}

fn connected_diameter(g: &Graph) -> Result<usize> {
    g.diameter()
}

/// `(sqrt(n^2 + 4m), n - 1 + e^{rho sqrt(n(n-1))})`.
pub fn thm1_bounds(g: &Graph) -> Result<(f64, ExpSeries)> {
    let rho = connected_diameter(g)? as f64;
    let (n, m) = (g.order() as f64, g.size() as f64);
    let lower = (n * n + 4.0 * m).sqrt();
    let upper = ExpSeries::new()
        .constant(n - 1.0)
        .term(1.0, rho * (n * (n - 1.0)).sqrt());
    Ok((lower, upper))
}

/// `e^{2(n-1) - 2m/n} + e^{-2(n-1) + 2m/n} + n - 2`.
pub fn thm2_lower(g: &Graph) -> Result<ExpSeries> {
    need_two(g)?;
    let (n, m) = (g.order() as f64, g.size() as f64);
    let x = 2.0 * (n - 1.0) - 2.0 * m / n;
    Ok(ExpSeries::new()
        .term(1.0, x)
        .term(1.0, -x)
        .constant(n - 2.0))
}

/// `(2n - 2 - Delta1)(2n - 2 - Delta2)`, exact.
fn degree_radicand(n: usize, p: &DegreeProfile) -> u64 {
    ((2 * n - 2 - p.delta1) * (2 * n - 2 - p.delta2)) as u64
}

/// `e^{sqrt(R)} + (n - 1) e^{-sqrt(R)/(n - 1)}` with
/// `R = (2n - 2 - Delta1)(2n - 2 - Delta2)`.
pub fn thm3_lower(g: &Graph) -> Result<ExpSeries> {
    need_two(g)?;
    let n = g.order();
    let root = (degree_radicand(n, &g.degree_profile()?) as f64).sqrt();
    let k = (n - 1) as f64;
    Ok(ExpSeries::new().term(1.0, root).term(k, -root / k))
}

/// `2e^{3(n-1)/2} + 2e^{-3(n-1)/2} + 2n - 4`, the lower bound on
/// `DEE(G) + DEE(complement of G)` when both are connected.
pub fn thm4_ng_lower(n: usize) -> ExpSeries {
    let n = n as f64;
    let x = 1.5 * (n - 1.0);
    ExpSeries::new()
        .term(2.0, x)
        .term(2.0, -x)
        .constant(2.0 * n - 4.0)
}

/// `n - 1 + e^{sqrt(n(n-1) rho^2 - 1)}`.
pub fn thm5_upper(g: &Graph) -> Result<ExpSeries> {
    need_two(g)?;
    let n = g.order();
    let rho = connected_diameter(g)?;
    let radicand = (n * (n - 1) * rho * rho - 1) as f64;
    Ok(ExpSeries::new()
        .constant((n - 1) as f64)
        .term(1.0, radicand.sqrt()))
}

/// Both sides of `DEE(G) = e^{2n-r-2} - e^{n-r-2} + e^{-1} EE(complement)`
/// for an `r`-regular graph of diameter at most two. The left side comes
/// from the distance spectrum, the right from the complement's adjacency
/// spectrum.
pub fn thm6_identity(g: &Graph) -> Result<(ExpSeries, ExpSeries)> {
    let r = g.regular_degree().ok_or(Error::NotRegular)?;
    let rho = connected_diameter(g)?;
    if rho > 2 {
        return Err(Error::DiameterTooLarge(rho));
    }
    let lhs = spectrum_series(&distance_spectrum(&DistanceMatrix::new(g)?)?);
    Ok((lhs, thm6_rhs(g, r)?))
}

fn thm6_rhs(g: &Graph, r: usize) -> Result<ExpSeries> {
    let n = g.order() as f64;
    let r = r as f64;
    let comp = adjacency_spectrum(&g.complement())?;
    let mut rhs = ExpSeries::new()
        .term(1.0, 2.0 * n - r - 2.0)
        .term(-1.0, n - r - 2.0);
    for &mu in comp.values() {
        rhs = rhs.term(1.0, mu - 1.0);
    }
    Ok(rhs)
}

/// `sqrt((2n - 2 - Delta1)(2n - 2 - Delta2))`, a lower bound on the largest
/// distance eigenvalue.
pub fn lemma3_lambda1_lower(g: &Graph) -> Result<f64> {
    need_two(g)?;
    Ok((degree_radicand(g.order(), &g.degree_profile()?) as f64).sqrt())
}

/// Whether the largest-eigenvalue bound is attained, decided structurally:
/// regular with diameter at most two.
pub fn lemma3_equality_expected(g: &Graph) -> Result<bool> {
    Ok(g.regular_degree().is_some() && connected_diameter(g)? <= 2)
}

/// Structural class of `g`, checked against the least eigenvalue of its
/// distance spectrum `s`.
pub fn lemma4_classify(g: &Graph, s: &Spectrum) -> Result<LeastEigenClass> {
    need_two(g)?;
    let class = LeastEigenClass::of(g);
    if class.matches(s.least()) {
        Ok(class)
    } else {
        Err(Error::Lemma4Contradiction {
            class: class.as_str(),
            lambda_min: s.least(),
        })
    }
}

/// The two "sharper than the older bounds" comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Comparisons {
    /// The degree-based lower bound is at least `sqrt(n^2 + 4m)`.
    pub t3_beats_t1: bool,
    /// The diameter-based upper bound is at most `n - 1 + e^{rho sqrt(n(n-1))}`.
    pub t5_beats_t1: bool,
}

pub fn comparison_checks(g: &Graph) -> Result<Comparisons> {
    let (t1_lower, t1_upper) = thm1_bounds(g)?;
    let t3 = thm3_lower(g)?;
    let t5 = thm5_upper(g)?;
    let t3_beats_t1 = match t3.value() {
        Some(v) => v >= t1_lower - 1e-9,
        None => true,
    };
    let t5_beats_t1 = t5.ln() <= t1_upper.ln() + 1e-9;
    Ok(Comparisons {
        t3_beats_t1,
        t5_beats_t1,
    })
}

/// A positive quantity available directly or only through its log.
#[derive(Debug, Clone, Copy)]
struct Magnitude {
    linear: Option<f64>,
    ln: f64,
}

impl Magnitude {
    fn plain(x: f64) -> Self {
        Magnitude {
            linear: Some(x),
            ln: x.ln(),
        }
    }
}

impl From<&ExpSeries> for Magnitude {
    fn from(s: &ExpSeries) -> Self {
        Magnitude {
            linear: s.value(),
            ln: s.ln(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Side {
    Lower,
    Upper,
    Identity,
}

#[derive(Debug, Clone, Copy)]
enum Tol {
    /// Scaled by `max(1, |observed|)`; taken as-is on logs.
    Relative(f64),
    Absolute(f64),
}

#[derive(Debug, Clone, Copy)]
struct Policy {
    side: Side,
    strict: bool,
    hold_tol: Tol,
    eq_tol: Tol,
}

impl Policy {
    const fn relative(side: Side, strict: bool) -> Self {
        Policy {
            side,
            strict,
            hold_tol: Tol::Relative(REL_TOL),
            eq_tol: Tol::Relative(REL_TOL),
        }
    }
}

fn evaluate(id: TheoremId, bound: Magnitude, observed: Magnitude, policy: Policy) -> BoundReport {
    let (b, o, log_domain) = match (bound.linear, observed.linear) {
        (Some(b), Some(o)) => (b, o, false),
        _ => (bound.ln, observed.ln, true),
    };
    let slack = match policy.side {
        Side::Lower | Side::Identity => o - b,
        Side::Upper => b - o,
    };
    let scale = |t: Tol| match (t, log_domain) {
        (Tol::Relative(r), false) => r * o.abs().max(1.0),
        (Tol::Relative(r), true) | (Tol::Absolute(r), _) => r,
    };
    let equality = slack.abs() <= scale(policy.eq_tol);
    let holds = match policy.side {
        Side::Identity => equality,
        _ if policy.strict => {
            slack
                > if log_domain {
                    STRICT_LOG_SLACK
                } else {
                    STRICT_SLACK
                }
        }
        _ => slack >= -scale(policy.hold_tol),
    };
    BoundReport {
        theorem_id: id,
        bound_value: b,
        observed: o,
        slack,
        holds,
        equality,
        strict_required: policy.strict,
        log_domain,
    }
}

/// Everything the bound catalog needs about one connected graph, computed once.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub graph: Graph,
    pub rho: usize,
    pub profile: Option<DegreeProfile>,
    pub regular: Option<usize>,
    pub distance: DistanceMatrix,
    pub spectrum: Spectrum,
    pub dee: EstradaValue,
}

impl Analysis {
    pub fn new(g: &Graph) -> Result<Self> {
        let distance = DistanceMatrix::new(g)?;
        let spectrum = distance_spectrum(&distance)?;
        Ok(Analysis {
            graph: g.clone(),
            rho: distance.max_entry() as usize,
            profile: g.degree_profile().ok(),
            regular: g.regular_degree(),
            dee: estrada_index(&spectrum),
            distance,
            spectrum,
        })
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn dee_series(&self) -> ExpSeries {
        spectrum_series(&self.spectrum)
    }

    /// Why the regular-graph identity does not apply, if it does not.
    pub fn identity_obstacle(&self) -> Option<String> {
        match self.regular {
            None => Some("not regular".into()),
            Some(_) if self.rho > 2 => Some(format!("diameter {} exceeds 2", self.rho)),
            Some(_) => None,
        }
    }

    /// Analysis of the complement, if it is connected.
    pub fn complement(&self) -> Option<Analysis> {
        let comp = self.graph.complement();
        if !comp.is_connected() {
            return None;
        }
        Analysis::new(&comp).ok()
    }

    pub fn comparisons(&self) -> Option<Comparisons> {
        comparison_checks(&self.graph).ok()
    }

    /// Every applicable bound, in [`TheoremId::ALL`] order. The complement
    /// analysis is computed on demand unless supplied.
    pub fn bound_report(&self) -> Result<BoundSet> {
        let comp = self.complement();
        self.bound_report_with(comp.as_ref())
    }

    /// As [`bound_report`](Self::bound_report) with a precomputed complement
    /// analysis (`None` meaning the complement is disconnected).
    pub fn bound_report_with(&self, comp: Option<&Analysis>) -> Result<BoundSet> {
        let g = &self.graph;
        let n = g.order();
        let dee_series = self.dee_series();
        let dee = Magnitude::from(&dee_series);
        let mut set = BoundSet::default();
        let mut omit = |id: TheoremId, reason: String| {
            set.omitted.push(Omitted {
                theorem_id: id,
                reason,
            })
        };

        let (t1_lower, t1_upper) = thm1_bounds(g)?;
        let strict_t1 = n >= 2;
        let mut reports = vec![
            evaluate(
                TheoremId::T1Lower,
                Magnitude::plain(t1_lower),
                dee,
                Policy::relative(Side::Lower, strict_t1),
            ),
            evaluate(
                TheoremId::T1Upper,
                Magnitude::from(&t1_upper),
                dee,
                Policy::relative(Side::Upper, strict_t1),
            ),
        ];

        if n < 2 {
            for id in [
                TheoremId::T2Lower,
                TheoremId::T3Lower,
                TheoremId::T4NgLower,
                TheoremId::T5Upper,
            ] {
                omit(id, "requires n >= 2".into());
            }
        } else {
            reports.push(evaluate(
                TheoremId::T2Lower,
                Magnitude::from(&thm2_lower(g)?),
                dee,
                Policy::relative(Side::Lower, false),
            ));
            reports.push(evaluate(
                TheoremId::T3Lower,
                Magnitude::from(&thm3_lower(g)?),
                dee,
                Policy::relative(Side::Lower, false),
            ));
            match comp {
                Some(c) => {
                    let sum = dee_series.clone().extend(&c.dee_series());
                    reports.push(evaluate(
                        TheoremId::T4NgLower,
                        Magnitude::from(&thm4_ng_lower(n)),
                        Magnitude::from(&sum),
                        Policy::relative(Side::Lower, true),
                    ));
                }
                None => omit(TheoremId::T4NgLower, "complement is disconnected".into()),
            }
            reports.push(evaluate(
                TheoremId::T5Upper,
                Magnitude::from(&thm5_upper(g)?),
                dee,
                Policy::relative(Side::Upper, true),
            ));
        }

        match (self.identity_obstacle(), self.regular) {
            (None, Some(r)) => reports.push(evaluate(
                TheoremId::T6Identity,
                Magnitude::from(&thm6_rhs(g, r)?),
                dee,
                Policy::relative(Side::Identity, false),
            )),
            (reason, _) => omit(
                TheoremId::T6Identity,
                reason.unwrap_or_else(|| "not regular".into()),
            ),
        }

        if n < 2 {
            omit(TheoremId::L3Lambda1Lower, "requires n >= 2".into());
            omit(TheoremId::L4Class, "requires n >= 2".into());
        } else {
            let l3 = evaluate(
                TheoremId::L3Lambda1Lower,
                Magnitude::plain(lemma3_lambda1_lower(g)?),
                Magnitude::plain(self.spectrum.largest()),
                Policy {
                    side: Side::Lower,
                    strict: false,
                    hold_tol: Tol::Absolute(LAMBDA1_TOL),
                    eq_tol: Tol::Absolute(EIGEN_TOL),
                },
            );
            reports.push(l3);
            reports.push(self.least_eigen_report());
        }

        set.reports = reports;
        Ok(set)
    }

    fn least_eigen_report(&self) -> BoundReport {
        let class = LeastEigenClass::of(&self.graph);
        let least = self.spectrum.least();
        let below = class == LeastEigenClass::Below2383;
        let slack = if below {
            LEAST_EIGENVALUE_GAP - least
        } else {
            least - class.signature()
        };
        BoundReport {
            theorem_id: TheoremId::L4Class,
            bound_value: class.signature(),
            observed: least,
            slack,
            holds: class.matches(least),
            equality: !below && slack.abs() <= EIGEN_TOL,
            strict_required: below,
            log_domain: false,
        }
    }

    pub fn least_eigen_class(&self) -> Result<LeastEigenClass> {
        lemma4_classify(&self.graph, &self.spectrum)
    }
}

/// [`Analysis::bound_report`] for a single graph.
pub fn bound_report(g: &Graph) -> Result<BoundSet> {
    Analysis::new(g)?.bound_report()
}
