//! Closed-form scalar expressions over chart coordinates.
//!
//! The grammar is small on purpose: constants, coordinates, sums, products,
//! integer powers, `sin`, `cos`, `exp` and the smooth cutoff `cut(x; lo, hi)`.
//! Partial derivatives are computed symbolically and stay inside the grammar;
//! the cutoff's derivatives are expressed through the flat kernel
//! `flat_k(y) = exp(-1/y) * y^(-k)` (zero for `y <= 0`), whose derivative is
//! `flat_{k+2} - k * flat_{k+1}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(f64),
    /// Coordinate by axis position in the chart.
    Var(usize),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Box<Expr>, i32),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Exp(Box<Expr>),
    /// Monotone smooth step: 0 for `arg <= lo`, 1 for `arg >= hi`.
    Cut {
        arg: Box<Expr>,
        lo: f64,
        hi: f64,
    },
    /// `exp(-1/arg) * arg^(-order)` for `arg > 0`, else 0.
    Flat {
        order: u32,
        arg: Box<Expr>,
    },
}

impl Expr {
    pub fn zero() -> Expr {
        Expr::Const(0.0)
    }

    pub fn one() -> Expr {
        Expr::Const(1.0)
    }

    pub fn constant(c: f64) -> Expr {
        Expr::Const(c)
    }

    pub fn var(axis: usize) -> Expr {
        Expr::Var(axis)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Const(c) if *c == 0.0)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Expr::Const(c) if *c == 1.0)
    }

    pub fn as_const(&self) -> Option<f64> {
        match self {
            Expr::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn sum(terms: impl IntoIterator<Item = Expr>) -> Expr {
        let mut flat = Vec::new();
        let mut constant = 0.0;
        for t in terms {
            match t {
                Expr::Const(c) => constant += c,
                Expr::Add(inner) => {
                    for i in inner {
                        match i {
                            Expr::Const(c) => constant += c,
                            other => flat.push(other),
                        }
                    }
                }
                other => flat.push(other),
            }
        }
        if constant != 0.0 {
            flat.push(Expr::Const(constant));
        }
        match flat.len() {
            0 => Expr::zero(),
            1 => flat.pop().unwrap(),
            _ => Expr::Add(flat),
        }
    }

    pub fn product(factors: impl IntoIterator<Item = Expr>) -> Expr {
        let mut flat = Vec::new();
        let mut constant = 1.0;
        for f in factors {
            match f {
                Expr::Const(c) => constant *= c,
                Expr::Mul(inner) => {
                    for i in inner {
                        match i {
                            Expr::Const(c) => constant *= c,
                            other => flat.push(other),
                        }
                    }
                }
                other => flat.push(other),
            }
        }
        if constant == 0.0 {
            return Expr::zero();
        }
        if constant != 1.0 || flat.is_empty() {
            flat.insert(0, Expr::Const(constant));
        }
        match flat.len() {
            1 => flat.pop().unwrap(),
            _ => Expr::Mul(flat),
        }
    }

    pub fn powi(self, n: i32) -> Expr {
        match (self, n) {
            (_, 0) => Expr::one(),
            (e, 1) => e,
            (Expr::Const(c), n) => Expr::Const(c.powi(n)),
            (Expr::Pow(base, m), n) => Expr::Pow(base, m * n),
            (e, n) => Expr::Pow(Box::new(e), n),
        }
    }

    pub fn sin(self) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(c.sin()),
            e => Expr::Sin(Box::new(e)),
        }
    }

    pub fn cos(self) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(c.cos()),
            e => Expr::Cos(Box::new(e)),
        }
    }

    pub fn exp(self) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(c.exp()),
            e => Expr::Exp(Box::new(e)),
        }
    }

    pub fn cut(self, lo: f64, hi: f64) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(cut_value(c, lo, hi)),
            e => Expr::Cut {
                arg: Box::new(e),
                lo,
                hi,
            },
        }
    }

    pub fn flat(self, order: u32) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(flat_value(order, c)),
            e => Expr::Flat {
                order,
                arg: Box::new(e),
            },
        }
    }

    pub fn scale(self, c: f64) -> Expr {
        Expr::product([Expr::Const(c), self])
    }

    /// Evaluates at a coordinate tuple. Panics if a variable index is out of range.
    pub fn eval(&self, point: &[f64]) -> f64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Var(i) => point[*i],
            Expr::Add(ts) => ts.iter().map(|t| t.eval(point)).sum(),
            Expr::Mul(fs) => fs.iter().map(|f| f.eval(point)).product(),
            Expr::Pow(b, n) => b.eval(point).powi(*n),
            Expr::Sin(a) => a.eval(point).sin(),
            Expr::Cos(a) => a.eval(point).cos(),
            Expr::Exp(a) => a.eval(point).exp(),
            Expr::Cut { arg, lo, hi } => cut_value(arg.eval(point), *lo, *hi),
            Expr::Flat { order, arg } => flat_value(*order, arg.eval(point)),
        }
    }

    /// Exact partial derivative with respect to the coordinate `axis`.
    pub fn diff(&self, axis: usize) -> Expr {
        match self {
            Expr::Const(_) => Expr::zero(),
            Expr::Var(i) => {
                if *i == axis {
                    Expr::one()
                } else {
                    Expr::zero()
                }
            }
            Expr::Add(ts) => Expr::sum(ts.iter().map(|t| t.diff(axis))),
            Expr::Mul(fs) => {
                let mut terms = Vec::new();
                for (i, f) in fs.iter().enumerate() {
                    let df = f.diff(axis);
                    if df.is_zero() {
                        continue;
                    }
                    let rest = fs
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, g)| g.clone());
                    terms.push(Expr::product(std::iter::once(df).chain(rest)));
                }
                Expr::sum(terms)
            }
            Expr::Pow(b, n) => {
                let db = b.diff(axis);
                if db.is_zero() {
                    return Expr::zero();
                }
                Expr::product([Expr::Const(*n as f64), (**b).clone().powi(n - 1), db])
            }
            Expr::Sin(a) => chain(a, axis, |a| a.cos()),
            Expr::Cos(a) => chain(a, axis, |a| a.sin().scale(-1.0)),
            Expr::Exp(a) => chain(a, axis, |a| a.exp()),
            Expr::Cut { arg, lo, hi } => {
                let (lo, hi) = (*lo, *hi);
                chain(arg, axis, move |a| cut_derivative(a, lo, hi))
            }
            Expr::Flat { order, arg } => {
                let k = *order;
                chain(arg, axis, move |a| {
                    let lead = a.clone().flat(k + 2);
                    if k == 0 {
                        lead
                    } else {
                        lead - a.flat(k + 1).scale(k as f64)
                    }
                })
            }
        }
    }

    /// True if the expression mentions coordinate `axis`.
    pub fn depends_on(&self, axis: usize) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var(i) => *i == axis,
            Expr::Add(v) | Expr::Mul(v) => v.iter().any(|e| e.depends_on(axis)),
            Expr::Pow(b, _) => b.depends_on(axis),
            Expr::Sin(a) | Expr::Cos(a) | Expr::Exp(a) => a.depends_on(axis),
            Expr::Cut { arg, .. } | Expr::Flat { arg, .. } => arg.depends_on(axis),
        }
    }

    /// Largest variable index used, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Const(_) => None,
            Expr::Var(i) => Some(*i),
            Expr::Add(v) | Expr::Mul(v) => v.iter().filter_map(Expr::max_var).max(),
            Expr::Pow(b, _) => b.max_var(),
            Expr::Sin(a) | Expr::Cos(a) | Expr::Exp(a) => a.max_var(),
            Expr::Cut { arg, .. } | Expr::Flat { arg, .. } => arg.max_var(),
        }
    }

    /// Node count, used to keep an eye on derivative growth.
    pub fn size(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var(_) => 1,
            Expr::Add(v) | Expr::Mul(v) => 1 + v.iter().map(Expr::size).sum::<usize>(),
            Expr::Pow(b, _) => 1 + b.size(),
            Expr::Sin(a) | Expr::Cos(a) | Expr::Exp(a) => 1 + a.size(),
            Expr::Cut { arg, .. } | Expr::Flat { arg, .. } => 1 + arg.size(),
        }
    }

    /// Renders with the given coordinate names; the output parses back with
    /// [`crate::parse::parse_expr`].
    pub fn display<'a>(&'a self, names: &'a [String]) -> DisplayExpr<'a> {
        DisplayExpr { expr: self, names }
    }
}

fn chain(inner: &Expr, axis: usize, outer: impl FnOnce(Expr) -> Expr) -> Expr {
    let d = inner.diff(axis);
    if d.is_zero() {
        return Expr::zero();
    }
    Expr::product([outer(inner.clone()), d])
}

/// d/dx cut(x; lo, hi) as an expression in `x`.
fn cut_derivative(x: Expr, lo: f64, hi: f64) -> Expr {
    let width = hi - lo;
    let y = Expr::sum([x, Expr::Const(-lo)]).scale(1.0 / width);
    let y_bar = Expr::sum([Expr::one(), y.clone().scale(-1.0)]);
    let numer = Expr::sum([
        Expr::product([y.clone().flat(2), y_bar.clone().flat(0)]),
        Expr::product([y.clone().flat(0), y_bar.clone().flat(2)]),
    ]);
    let denom = Expr::sum([y.flat(0), y_bar.flat(0)]);
    Expr::product([Expr::Const(1.0 / width), numer, denom.powi(-2)])
}

pub fn flat_value(order: u32, y: f64) -> f64 {
    if y <= 0.0 {
        return 0.0;
    }
    // exp(-1/y) underflows first; past that point the kernel is zero to working precision
    if (-1.0 / y).exp() == 0.0 {
        return 0.0;
    }
    (-1.0 / y - order as f64 * y.ln()).exp()
}

pub fn cut_value(x: f64, lo: f64, hi: f64) -> f64 {
    let y = (x - lo) / (hi - lo);
    if y <= 0.0 {
        0.0
    } else if y >= 1.0 {
        1.0
    } else {
        let a = flat_value(0, y);
        let b = flat_value(0, 1.0 - y);
        a / (a + b)
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::sum([self, rhs])
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::sum([self, rhs.scale(-1.0)])
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::product([self, rhs])
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.scale(-1.0)
    }
}

impl From<f64> for Expr {
    fn from(c: f64) -> Expr {
        Expr::Const(c)
    }
}

pub struct DisplayExpr<'a> {
    expr: &'a Expr,
    names: &'a [String],
}

impl DisplayExpr<'_> {
    fn child<'b>(&'b self, e: &'b Expr) -> DisplayExpr<'b> {
        DisplayExpr {
            expr: e,
            names: self.names,
        }
    }
}

fn write_const(f: &mut fmt::Formatter<'_>, c: f64) -> fmt::Result {
    if c < 0.0 {
        write!(f, "(-{})", -c)
    } else {
        write!(f, "{c}")
    }
}

impl fmt::Display for DisplayExpr<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.expr {
            Expr::Const(c) => write_const(f, *c),
            Expr::Var(i) => match self.names.get(*i) {
                Some(n) => write!(f, "{n}"),
                None => write!(f, "x{i}"),
            },
            Expr::Add(ts) => {
                write!(f, "(")?;
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{}", self.child(t))?;
                }
                write!(f, ")")
            }
            Expr::Mul(fs) => {
                for (i, t) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "{}", self.child(t))?;
                }
                Ok(())
            }
            Expr::Pow(b, n) => {
                if *n < 0 {
                    write!(f, "({})^({n})", self.child(b))
                } else {
                    write!(f, "({})^{n}", self.child(b))
                }
            }
            Expr::Sin(a) => write!(f, "sin({})", self.child(a)),
            Expr::Cos(a) => write!(f, "cos({})", self.child(a)),
            Expr::Exp(a) => write!(f, "exp({})", self.child(a)),
            Expr::Cut { arg, lo, hi } => {
                write!(f, "cut({}, ", self.child(arg))?;
                write_const(f, *lo)?;
                write!(f, ", ")?;
                write_const(f, *hi)?;
                write!(f, ")")
            }
            Expr::Flat { order, arg } => write!(f, "flat({}, {order})", self.child(arg)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn central_difference(e: &Expr, axis: usize, p: &[f64]) -> f64 {
        let h = 1e-5;
        let mut a = p.to_vec();
        let mut b = p.to_vec();
        a[axis] += h;
        b[axis] -= h;
        (e.eval(&a) - e.eval(&b)) / (2.0 * h)
    }

    #[test]
    fn constant_folding_and_zero_pruning() {
        let x = Expr::var(0);
        assert!((x.clone() * Expr::zero()).is_zero());
        assert_eq!(x.clone() * Expr::one(), x);
        assert_eq!(Expr::Const(2.0) + Expr::Const(3.0), Expr::Const(5.0));
        assert!(Expr::Const(4.0).diff(0).is_zero());
        assert!(x.diff(1).is_zero());
    }

    #[test]
    fn cut_is_flat_outside_its_ramp() {
        let c = Expr::var(0).cut(0.0, 1.0);
        assert_eq!(c.eval(&[-0.5]), 0.0);
        assert_eq!(c.eval(&[0.0]), 0.0);
        assert_eq!(c.eval(&[1.0]), 1.0);
        assert_eq!(c.eval(&[3.0]), 1.0);
        assert!((c.eval(&[0.5]) - 0.5).abs() < 1e-15);
        let dc = c.diff(0);
        assert_eq!(dc.eval(&[-0.1]), 0.0);
        assert_eq!(dc.eval(&[1.1]), 0.0);
        assert!(dc.eval(&[0.5]) > 0.0);
    }

    #[test]
    fn cut_is_monotone() {
        let c = Expr::var(0).cut(-0.3, 0.4);
        let mut prev = -1.0;
        for i in 0..=200 {
            let x = -0.5 + i as f64 * 0.005;
            let v = c.eval(&[x]);
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn flat_kernel_handles_tiny_arguments() {
        for k in 0..12 {
            for y in [1e-300, 1e-12, 1e-3, 2e-3] {
                assert!(flat_value(k, y).is_finite());
            }
        }
    }

    #[test]
    fn second_derivatives_of_cut_match_differences() {
        let c = Expr::var(0).cut(0.0, 1.0);
        let d1 = c.diff(0);
        let d2 = d1.diff(0);
        for x in [0.1, 0.3, 0.5, 0.77, 0.9] {
            let fd = central_difference(&d1, 0, &[x]);
            let exact = d2.eval(&[x]);
            assert!(
                (fd - exact).abs() <= 1e-6 * exact.abs().max(1.0),
                "{x}: {fd} vs {exact}"
            );
        }
    }

    #[test]
    fn product_rule_on_mixed_expression() {
        let x = Expr::var(0);
        let y = Expr::var(1);
        let e = x.clone().sin() * y.clone().exp() * x.clone().powi(3);
        let p = [0.7, -0.4];
        for axis in 0..2 {
            let fd = central_difference(&e, axis, &p);
            let exact = e.diff(axis).eval(&p);
            assert!((fd - exact).abs() <= 1e-8 * exact.abs().max(1.0));
        }
    }
}
