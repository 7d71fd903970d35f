use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{LaurentPoly, LogNum, PuiseuxCoeff, Rational, TropNum};
use crate::phylo::{pairs, PhyloTree};

use super::cherry::{build_cherry_order, coordinate_set_i, CherryOrder};
use super::expansion::{expand_pluecker, PlueckerExpansion};
use super::point::{combinatorial_type, cone_violation, convert_to_log, membership, PlueckerPoint};
use super::GrassError;

/// A choice of base pair and cherry order together with its expansion.
#[derive(Clone, Debug)]
pub struct Chart {
    pub order: CherryOrder,
    pub expansion: PlueckerExpansion,
}

impl Chart {
    pub fn new(t: &PhyloTree, order: CherryOrder) -> Result<Chart, GrassError> {
        let (i, j) = order.base;
        let index = coordinate_set_i(t, &order, i, j)?;
        let expansion = expand_pluecker(t, &order, i, j, &index)?;
        Ok(Chart { order, expansion })
    }

    /// The chart of the depth-first cherry order for `(i, j)`.
    pub fn canonical(t: &PhyloTree, i: usize, j: usize) -> Result<Chart, GrassError> {
        Chart::new(t, build_cherry_order(t, i, j)?)
    }

    pub fn base(&self) -> (usize, usize) {
        self.order.base
    }

    pub fn num_vars(&self) -> usize {
        self.expansion.index.len()
    }
}

/// `log |f(σ(x))|` for `f` in the variables of `I`: the maximum over terms of
/// `−val(c_α) + Σ α_kl (x_kl − x_ij)`, or `-inf` for `f = 0`.
///
/// Assumes `x` is a member lying in the cone of the chart's tree.
pub fn section_eval(x: &PlueckerPoint, chart: &Chart, f: &LaurentPoly) -> Result<LogNum, GrassError> {
    let idx = &chart.expansion.index;
    if f.nvars() != idx.len() {
        return Err(GrassError::FormArity { expected: idx.len(), got: f.nvars() });
    }
    let (i, j) = chart.base();
    let xij = x.get(i, j);
    // negated log-radii turn the Gauss valuation into the log of the norm
    let r: Vec<TropNum> = idx.vars.iter().map(|&(a, b)| TropNum::Finite(&xij - x.get(a, b))).collect();
    Ok(convert_to_log(&f.gauss_eval(&r)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionViolation {
    pub base: (usize, usize),
    pub pair: (usize, usize),
    pub expected: Rational,
    pub got: LogNum,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionReport {
    pub charts_checked: usize,
    pub pairs_checked: usize,
    pub violation: Option<SectionViolation>,
}

impl SectionReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

fn check_pre(x: &PlueckerPoint, t: &PhyloTree) -> Result<(), GrassError> {
    if !membership(x) {
        combinatorial_type(x)?;
    }
    if let Some(quartet) = cone_violation(x, t)? {
        return Err(GrassError::NotInCone { quartet });
    }
    Ok(())
}

fn check_chart(x: &PlueckerPoint, chart: &Chart, report: &mut SectionReport) -> Result<(), GrassError> {
    let (i, j) = chart.base();
    report.charts_checked += 1;
    for (&(k, l), u) in chart.expansion.entries() {
        report.pairs_checked += 1;
        let got = section_eval(x, chart, u)?;
        let expected = x.get(k, l) - x.get(i, j);
        if got != LogNum::Finite(expected.clone()) {
            report.violation = Some(SectionViolation { base: (i, j), pair: (k, l), expected, got });
            break;
        }
    }
    Ok(())
}

/// Checks `log|u_kl(σ(x))| = x_kl − x_ij` for every `{k,l} ≠ {i,j}` in one chart.
pub fn verify_section_identity_at(
    x: &PlueckerPoint,
    t: &PhyloTree,
    chart: &Chart,
) -> Result<SectionReport, GrassError> {
    check_pre(x, t)?;
    let mut report = SectionReport { charts_checked: 0, pairs_checked: 0, violation: None };
    check_chart(x, chart, &mut report)?;
    Ok(report)
}

/// [`verify_section_identity_at`] for the depth-first chart of base pair `(1, 2)`.
pub fn verify_section_identity(x: &PlueckerPoint, t: &PhyloTree) -> Result<SectionReport, GrassError> {
    verify_section_identity_at(x, t, &Chart::canonical(t, 1, 2)?)
}

/// [`verify_section_identity_at`] over the depth-first chart of every ordered
/// base pair; stops at the first violation.
pub fn verify_section_identity_all(x: &PlueckerPoint, t: &PhyloTree) -> Result<SectionReport, GrassError> {
    check_pre(x, t)?;
    let n = t.n();
    let mut report = SectionReport { charts_checked: 0, pairs_checked: 0, violation: None };
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            check_chart(x, &Chart::canonical(t, i, j)?, &mut report)?;
            if !report.holds() {
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// The Plücker coordinate `p_ab` as a form in `C(n,2)` variables, ordered
/// lexicographically by pair; `p_ba = −p_ab`.
pub fn pluecker_var(n: usize, a: usize, b: usize) -> LaurentPoly {
    let k = pairs(n).position(|p| p == (a.min(b), a.max(b))).expect("pair in range");
    let v = LaurentPoly::var(n * (n - 1) / 2, k);
    if a < b {
        v
    } else {
        -&v
    }
}

/// `p_ij p_kl − p_ik p_jl + p_il p_jk`, which vanishes on the Grassmannian.
pub fn pluecker_relation(n: usize, i: usize, j: usize, k: usize, l: usize) -> LaurentPoly {
    let p = |a, b| pluecker_var(n, a, b);
    let s = &(&p(i, j) * &p(k, l)) - &(&p(i, k) * &p(j, l));
    &s + &(&p(i, l) * &p(j, k))
}

/// `log |g(σ(x))|` for a homogeneous Laurent form `g` in the Plücker
/// coordinates, on the representative of `x` stored in the point.
///
/// Negative powers are cleared by a monomial `Π p_v^{m_v}` first, since the
/// expansions of non-base coordinates are not units; the result is corrected
/// by `Σ m_v x_v` afterwards.
pub fn form_log_value(x: &PlueckerPoint, chart: &Chart, g: &LaurentPoly) -> Result<LogNum, GrassError> {
    let n = x.n();
    let nv = n * (n - 1) / 2;
    if g.nvars() != nv {
        return Err(GrassError::FormArity { expected: nv, got: g.nvars() });
    }
    if g.is_zero() {
        return Ok(LogNum::NegInf);
    }
    let deg = g.homogeneous_degree().ok_or(GrassError::NotHomogeneous)?;
    let shift: Vec<BigInt> = g.min_exponents().into_iter().map(|m| -m).collect();
    let cleared = g * &LaurentPoly::monomial(shift.clone(), PuiseuxCoeff::one());
    let images: Vec<LaurentPoly> =
        pairs(n).map(|(a, b)| chart.expansion.get(a, b).expect("all pairs expanded")).collect();
    let f = cleared.substitute(&images)?;
    let (i, j) = chart.base();
    let total: BigInt = &deg + shift.iter().sum::<BigInt>();
    let mut corr = Rational::from_integer(total) * x.get(i, j);
    for ((a, b), m) in pairs(n).zip(&shift) {
        if !m.is_zero() {
            corr -= Rational::from_integer(m.clone()) * x.get(a, b);
        }
    }
    Ok(match section_eval(x, chart, &f)? {
        LogNum::Finite(v) => LogNum::Finite(v + corr),
        LogNum::NegInf => LogNum::NegInf,
    })
}

/// Depth-first and reversed charts for a few base pairs spread over the
/// leaves; at least three distinct choices for every `n ≥ 4`.
pub fn standard_choices(t: &PhyloTree) -> Result<Vec<Chart>, GrassError> {
    let n = t.n();
    let mut orders: Vec<CherryOrder> = Vec::new();
    for (i, j) in [(1, 2), (1, n), (2, 3), (n, n - 1)] {
        let o = build_cherry_order(t, i, j)?;
        let r = o.reversed();
        for c in [o, r] {
            if !orders.contains(&c) {
                orders.push(c);
            }
        }
    }
    orders.into_iter().map(|o| Chart::new(t, o)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub form: usize,
    pub first: ((usize, usize), LogNum),
    pub other: ((usize, usize), LogNum),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellDefinedReport {
    pub choices: usize,
    /// Value of each form under the first choice.
    pub values: Vec<LogNum>,
    pub disagreement: Option<Disagreement>,
}

impl WellDefinedReport {
    pub fn holds(&self) -> bool {
        self.disagreement.is_none()
    }
}

/// Evaluates every form of the panel through each of [`standard_choices`] and
/// compares the results exactly.
pub fn section_well_defined(x: &PlueckerPoint, forms: &[LaurentPoly]) -> Result<WellDefinedReport, GrassError> {
    let t = combinatorial_type(x)?;
    let charts = standard_choices(&t)?;
    let mut values = Vec::with_capacity(forms.len());
    for (k, g) in forms.iter().enumerate() {
        let first = form_log_value(x, &charts[0], g)?;
        for c in &charts[1..] {
            let v = form_log_value(x, c, g)?;
            if v != first {
                return Ok(WellDefinedReport {
                    choices: charts.len(),
                    values,
                    disagreement: Some(Disagreement {
                        form: k,
                        first: (charts[0].base(), first),
                        other: (c.base(), v),
                    }),
                });
            }
        }
        values.push(first);
    }
    Ok(WellDefinedReport { choices: charts.len(), values, disagreement: None })
}
