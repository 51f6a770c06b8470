//! Differential forms on a coordinate chart.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, FormError};
use crate::expr::Expr;

pub const MAX_DIMENSION: usize = 32;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisKind {
    Interval {
        lo: f64,
        hi: f64,
    },
    /// Coordinate on `[0, period)`, identified modulo `period`.
    Periodic {
        period: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub kind: AxisKind,
}

impl Axis {
    pub fn interval(name: &str, lo: f64, hi: f64) -> Axis {
        Axis {
            name: name.to_string(),
            kind: AxisKind::Interval { lo, hi },
        }
    }

    pub fn periodic(name: &str, period: f64) -> Axis {
        Axis {
            name: name.to_string(),
            kind: AxisKind::Periodic { period },
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.kind, AxisKind::Periodic { .. })
    }

    /// Sample positions for `n` grid points. Interval axes include both
    /// endpoints; periodic axes use `n` equally spaced points from 0.
    pub fn samples(&self, n: usize) -> Vec<f64> {
        match self.kind {
            AxisKind::Interval { lo, hi } => {
                if n == 1 {
                    vec![0.5 * (lo + hi)]
                } else {
                    (0..n)
                        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                        .collect()
                }
            }
            AxisKind::Periodic { period } => (0..n).map(|i| period * i as f64 / n as f64).collect(),
        }
    }
}

/// Ordered coordinate axes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Chart {
    axes: Vec<Axis>,
}

impl Chart {
    pub fn new(axes: Vec<Axis>) -> Result<Arc<Chart>, FormError> {
        if axes.is_empty() || axes.len() > MAX_DIMENSION {
            return Err(invalid(
                "chart",
                format!("dimension must be in 1..={MAX_DIMENSION}"),
            ));
        }
        for (i, a) in axes.iter().enumerate() {
            if axes[..i].iter().any(|b| b.name == a.name) {
                return Err(invalid("chart", format!("duplicate axis '{}'", a.name)));
            }
            if a.name.is_empty()
                || !a
                    .name
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(invalid("chart", format!("bad axis name '{}'", a.name)));
            }
            let ok = match a.kind {
                AxisKind::Interval { lo, hi } => lo.is_finite() && hi.is_finite() && lo < hi,
                AxisKind::Periodic { period } => period.is_finite() && period > 0.0,
            };
            if !ok {
                return Err(invalid("chart", format!("bad range for axis '{}'", a.name)));
            }
        }
        Ok(Arc::new(Chart { axes }))
    }

    pub fn dimension(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn names(&self) -> Vec<String> {
        self.axes.iter().map(|a| a.name.clone()).collect()
    }

    pub fn index(&self, name: &str) -> Result<usize, FormError> {
        self.axes
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| FormError::UnknownAxis(name.to_string()))
    }

    pub fn var(&self, name: &str) -> Result<Expr, FormError> {
        self.index(name).map(Expr::var)
    }

    /// 32 points per periodic axis, 17 per interval axis.
    pub fn default_resolution(&self) -> Vec<usize> {
        self.axes
            .iter()
            .map(|a| if a.is_periodic() { 32 } else { 17 })
            .collect()
    }
}

/// Strictly increasing set of axis positions, stored as a bit mask.
/// Ordered lexicographically by the sorted index list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(u32);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    pub fn new(indices: &[usize]) -> Result<MultiIndex, FormError> {
        let mut mask = 0u32;
        for (k, &i) in indices.iter().enumerate() {
            if i >= MAX_DIMENSION || (k > 0 && indices[k - 1] >= i) {
                return Err(FormError::InvalidIndex(indices.to_vec()));
            }
            mask |= 1 << i;
        }
        Ok(MultiIndex(mask))
    }

    pub fn single(i: usize) -> MultiIndex {
        MultiIndex(1 << i)
    }

    pub fn full(dimension: usize) -> MultiIndex {
        if dimension >= 32 {
            MultiIndex(u32::MAX)
        } else {
            MultiIndex((1u32 << dimension) - 1)
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..MAX_DIMENSION).filter(move |i| mask & (1 << i) != 0)
    }

    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    /// Sign and union for `dx_self ∧ dx_other`, or `None` when they overlap.
    pub fn wedge(self, other: MultiIndex) -> Option<(MultiIndex, f64)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        for j in other.indices() {
            let above = if j >= 31 { 0 } else { self.0 >> (j + 1) };
            swaps += above.count_ones();
        }
        let sign = if swaps.is_multiple_of(2) { 1.0 } else { -1.0 };
        Some((MultiIndex(self.0 | other.0), sign))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.indices().cmp(other.indices())
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.indices()).finish()
    }
}

/// Ring operations a form coefficient needs.
pub trait Coefficient: Clone + fmt::Debug + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, c: f64) -> Self;
}

impl Coefficient for f64 {
    fn zero() -> f64 {
        0.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn plus(&self, other: &f64) -> f64 {
        self + other
    }
    fn times(&self, other: &f64) -> f64 {
        self * other
    }
    fn scaled(&self, c: f64) -> f64 {
        self * c
    }
}

impl Coefficient for Expr {
    fn zero() -> Expr {
        Expr::zero()
    }
    fn is_zero(&self) -> bool {
        Expr::is_zero(self)
    }
    fn plus(&self, other: &Expr) -> Expr {
        Expr::sum([self.clone(), other.clone()])
    }
    fn times(&self, other: &Expr) -> Expr {
        Expr::product([self.clone(), other.clone()])
    }
    fn scaled(&self, c: f64) -> Expr {
        self.clone().scale(c)
    }
}

/// A p-form `Σ f_I dx_I` with coefficients of type `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormField<C = Expr> {
    chart: Arc<Chart>,
    degree: usize,
    terms: BTreeMap<MultiIndex, C>,
}

impl<C: Coefficient> FormField<C> {
    pub fn zero(chart: &Arc<Chart>, degree: usize) -> Result<Self, FormError> {
        if degree > chart.dimension() {
            return Err(FormError::DegreeOverflow {
                degree,
                dimension: chart.dimension(),
            });
        }
        Ok(FormField {
            chart: Arc::clone(chart),
            degree,
            terms: BTreeMap::new(),
        })
    }

    /// Builds a form from `(multi-index, coefficient)` pairs. Repeated
    /// indices accumulate.
    pub fn from_terms(
        chart: &Arc<Chart>,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, C)>,
    ) -> Result<Self, FormError> {
        let mut form = Self::zero(chart, degree)?;
        for (idx, c) in terms {
            let mi = MultiIndex::new(&idx)?;
            if mi.len() != degree || mi.max_index().is_some_and(|m| m >= chart.dimension()) {
                return Err(FormError::InvalidIndex(idx));
            }
            form.accumulate(mi, c);
        }
        Ok(form)
    }

    pub fn scalar(chart: &Arc<Chart>, value: C) -> Self {
        let mut form = Self::zero(chart, 0).expect("degree 0 always fits");
        form.accumulate(MultiIndex::EMPTY, value);
        form
    }

    fn accumulate(&mut self, mi: MultiIndex, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&mi) {
            Some(prev) => {
                let s = prev.plus(&c);
                if !s.is_zero() {
                    self.terms.insert(mi, s);
                }
            }
            None => {
                self.terms.insert(mi, c);
            }
        }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mi: MultiIndex) -> C {
        self.terms.get(&mi).cloned().unwrap_or_else(C::zero)
    }

    fn same_chart(&self, other: &Self) -> Result<(), FormError> {
        if Arc::ptr_eq(&self.chart, &other.chart) || *self.chart == *other.chart {
            Ok(())
        } else {
            Err(FormError::ChartMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FormError> {
        self.same_chart(other)?;
        if self.degree != other.degree {
            return Err(FormError::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut out = self.clone();
        for (mi, c) in &other.terms {
            out.accumulate(*mi, c.clone());
        }
        Ok(out)
    }

    pub fn scaled(&self, c: f64) -> Self {
        let mut out = Self {
            chart: Arc::clone(&self.chart),
            degree: self.degree,
            terms: BTreeMap::new(),
        };
        for (mi, v) in &self.terms {
            out.accumulate(*mi, v.scaled(c));
        }
        out
    }

    /// Exterior product with exact permutation signs.
    pub fn wedge(&self, other: &Self) -> Result<Self, FormError> {
        self.same_chart(other)?;
        let mut out = Self::zero(&self.chart, self.degree + other.degree)?;
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((mi, sign)) = a.wedge(*b) {
                    let prod = ca.times(cb);
                    out.accumulate(mi, if sign < 0.0 { prod.scaled(-1.0) } else { prod });
                }
            }
        }
        Ok(out)
    }

    /// `self ∧ self ∧ … ∧ self` (`n` factors); `n = 0` gives the constant 1.
    pub fn wedge_power(&self, n: usize) -> Result<Self, FormError>
    where
        C: From<f64>,
    {
        let mut acc = Self::scalar(&self.chart, C::from(1.0));
        for _ in 0..n {
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }

    /// Coefficient against the chart's ordered volume element.
    pub fn top_coefficient(&self) -> Result<C, FormError> {
        let dim = self.chart.dimension();
        if self.degree != dim {
            return Err(FormError::DegreeMismatch {
                expected: dim,
                found: self.degree,
            });
        }
        Ok(self.coefficient(MultiIndex::full(dim)))
    }

    /// Interior product `ι_v ω` with a constant vector `v`.
    pub fn contract(&self, v: &[f64]) -> Result<Self, FormError> {
        if self.degree == 0 {
            return Err(FormError::DegreeMismatch {
                expected: 1,
                found: 0,
            });
        }
        let mut out = Self::zero(&self.chart, self.degree - 1)?;
        for (mi, c) in &self.terms {
            for (pos, i) in mi.indices().enumerate() {
                if v[i] == 0.0 {
                    continue;
                }
                let rest = MultiIndex(mi.0 & !(1 << i));
                let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
                out.accumulate(rest, c.scaled(sign * v[i]));
            }
        }
        Ok(out)
    }
}

impl FormField<Expr> {
    /// Exterior derivative from exact symbolic partials.
    pub fn d(&self) -> Result<FormField<Expr>, FormError> {
        let dim = self.chart.dimension();
        let mut out = FormField::zero(&self.chart, self.degree + 1)?;
        for (mi, f) in &self.terms {
            for k in 0..dim {
                if mi.contains(k) {
                    continue;
                }
                let df = f.diff(k);
                if df.is_zero() {
                    continue;
                }
                let below = (mi.0 & ((1u32 << k) - 1)).count_ones();
                let sign = if below.is_multiple_of(2) { 1.0 } else { -1.0 };
                out.accumulate(MultiIndex(mi.0 | (1 << k)), df.scale(sign));
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[f64]) -> FormField<f64> {
        let mut out = FormField {
            chart: Arc::clone(&self.chart),
            degree: self.degree,
            terms: BTreeMap::new(),
        };
        for (mi, f) in &self.terms {
            out.accumulate(*mi, f.eval(point));
        }
        out
    }

    /// Top-degree coefficient as an expression.
    pub fn top_density(&self) -> Result<Expr, FormError> {
        self.top_coefficient()
    }

    /// Builds a form from coefficient strings in the [`Expr`] grammar, with
    /// multi-indices given by axis names.
    pub fn parse_terms(
        chart: &Arc<Chart>,
        degree: usize,
        terms: &[(Vec<&str>, &str)],
    ) -> Result<FormField<Expr>, FormError> {
        let names = chart.names();
        let mut parsed = Vec::new();
        for (axes, coeff) in terms {
            let mut idx = axes
                .iter()
                .map(|a| chart.index(a))
                .collect::<Result<Vec<_>, _>>()?;
            // put the axis list in increasing order and carry the permutation sign
            let mut sign = 1.0;
            for i in 0..idx.len() {
                for j in 0..idx.len() - 1 - i {
                    if idx[j] > idx[j + 1] {
                        idx.swap(j, j + 1);
                        sign = -sign;
                    }
                }
            }
            let e = crate::parse::parse_expr(coeff, &names)?;
            if idx.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            parsed.push((idx, e.scale(sign)));
        }
        FormField::from_terms(chart, degree, parsed)
    }
}

impl fmt::Display for FormField<Expr> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.chart.names();
        for (k, (mi, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", c.display(&names))?;
            let basis: Vec<String> = mi.indices().map(|i| format!("d{}", names[i])).collect();
            if !basis.is_empty() {
                write!(f, " {}", basis.join("^"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart(names: &[&str]) -> Arc<Chart> {
        Chart::new(names.iter().map(|n| Axis::interval(n, -1.0, 1.0)).collect()).unwrap()
    }

    #[test]
    fn dx_wedge_dy() {
        let c = chart(&["x", "y"]);
        let dx = FormField::<f64>::from_terms(&c, 1, [(vec![0], 1.0)]).unwrap();
        let dy = FormField::<f64>::from_terms(&c, 1, [(vec![1], 1.0)]).unwrap();
        let w = dx.wedge(&dy).unwrap();
        assert_eq!(w.coefficient(MultiIndex::new(&[0, 1]).unwrap()), 1.0);
        assert_eq!(
            dy.wedge(&dx)
                .unwrap()
                .coefficient(MultiIndex::new(&[0, 1]).unwrap()),
            -1.0
        );
        assert!(dx.wedge(&dx).unwrap().is_zero());
    }

    #[test]
    fn liouville_wedge_symplectic() {
        // (p1 dq1 + p2 dq2) ∧ (dp1∧dq1 + dp2∧dq2) on (p1, q1, p2, q2)
        let c = chart(&["p1", "q1", "p2", "q2"]);
        let lambda =
            FormField::parse_terms(&c, 1, &[(vec!["q1"], "p1"), (vec!["q2"], "p2")]).unwrap();
        let omega = lambda.d().unwrap();
        assert_eq!(
            omega,
            FormField::from_terms(
                &c,
                2,
                [(vec![0, 1], Expr::one()), (vec![2, 3], Expr::one())]
            )
            .unwrap()
        );
        let w = lambda.wedge(&omega).unwrap();
        // p1 dq1∧dp2∧dq2 + p2 dq2∧dp1∧dq1 = p1 dq1∧dp2∧dq2 + p2 dp1∧dq1∧dq2
        let p = [0.3, 0.0, -0.7, 0.0];
        let at = w.evaluate(&p);
        assert_eq!(at.coefficient(MultiIndex::new(&[1, 2, 3]).unwrap()), 0.3);
        assert_eq!(at.coefficient(MultiIndex::new(&[0, 1, 3]).unwrap()), -0.7);
        assert_eq!(at.terms().count(), 2);
    }

    #[test]
    fn d_of_standard_torus_form() {
        let c = Chart::new(vec![
            Axis::periodic("theta", std::f64::consts::TAU),
            Axis::periodic("q1", std::f64::consts::TAU),
            Axis::periodic("q2", std::f64::consts::TAU),
        ])
        .unwrap();
        let alpha = FormField::parse_terms(
            &c,
            1,
            &[(vec!["q1"], "cos(theta)"), (vec!["q2"], "sin(theta)")],
        )
        .unwrap();
        let da = alpha.d().unwrap();
        for th in [0.0, 0.4, 2.0, 5.5] {
            let v = da.evaluate(&[th, 0.0, 0.0]);
            assert_eq!(v.coefficient(MultiIndex::new(&[0, 1]).unwrap()), -th.sin());
            assert_eq!(v.coefficient(MultiIndex::new(&[0, 2]).unwrap()), th.cos());
        }
        assert!(da.d().unwrap().is_zero());
    }

    #[test]
    fn top_density_requires_full_degree() {
        let c = chart(&["x", "y"]);
        let dx = FormField::<f64>::from_terms(&c, 1, [(vec![0], 1.0)]).unwrap();
        assert_eq!(
            dx.top_coefficient(),
            Err(FormError::DegreeMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn chart_mismatch_is_an_error() {
        let a = chart(&["x", "y"]);
        let b = chart(&["u", "v"]);
        let f = FormField::<f64>::from_terms(&a, 1, [(vec![0], 1.0)]).unwrap();
        let g = FormField::<f64>::from_terms(&b, 1, [(vec![0], 1.0)]).unwrap();
        assert_eq!(f.wedge(&g), Err(FormError::ChartMismatch));
    }

    #[test]
    fn bad_multi_indices_are_rejected() {
        let c = chart(&["x", "y", "z"]);
        assert!(FormField::<f64>::from_terms(&c, 2, [(vec![1, 0], 1.0)]).is_err());
        assert!(FormField::<f64>::from_terms(&c, 2, [(vec![0, 3], 1.0)]).is_err());
        assert!(FormField::<f64>::from_terms(&c, 1, [(vec![0, 1], 1.0)]).is_err());
        assert!(FormField::<f64>::from_terms(&c, 0, [(vec![], 2.0)]).is_ok());
    }

    #[test]
    fn contraction_against_basis_vectors() {
        let c = chart(&["x", "y"]);
        let w = FormField::<f64>::from_terms(&c, 2, [(vec![0, 1], 3.0)]).unwrap();
        let ix = w.contract(&[1.0, 0.0]).unwrap();
        let iy = w.contract(&[0.0, 1.0]).unwrap();
        assert_eq!(ix.coefficient(MultiIndex::single(1)), 3.0);
        assert_eq!(iy.coefficient(MultiIndex::single(0)), -3.0);
    }
}
