//! Σ_{g,b} with fixed bases for absolute and relative first homology.
//!
//! Absolute basis: a₁, b₁, …, a_g, b_g, d₁, …, d_{b−1} where d_j is parallel to
//! boundary j. Boundary b is the "outer" one and carries no basis class.
//! Relative basis: α₁, β₁, …, α_g, β_g, A₂, …, A_b where A_i is an arc from
//! boundary 1 to boundary i.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::{BigVecJson, IntMatrix};
use crate::error::{invalid, BofillError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surface {
    genus: usize,
    boundary: usize,
    pairing: IntMatrix,
    rho: IntMatrix,
}

impl Surface {
    pub fn new(genus: usize, boundary: usize) -> Result<Surface> {
        if boundary == 0 {
            return Err(BofillError::ClosedSurface);
        }
        let m = 2 * genus + boundary - 1;
        let mut pairing = IntMatrix::zeros(m, m);
        let mut rho = IntMatrix::zeros(m, m);
        for i in 0..genus {
            let (a, b) = (2 * i, 2 * i + 1);
            pairing[(a, b)] = BigInt::one();
            pairing[(b, a)] = -BigInt::one();
            rho[(a, a)] = BigInt::one();
            rho[(b, b)] = BigInt::one();
        }
        // ⟨A_i, d_j⟩ = δ_ij − δ_1j
        for i in 2..=boundary {
            for j in 1..boundary {
                let v = (i == j) as i64 - (j == 1) as i64;
                pairing[(2 * genus + i - 2, 2 * genus + j - 1)] = BigInt::from(v);
            }
        }
        Ok(Surface {
            genus,
            boundary,
            pairing,
            rho,
        })
    }

    pub fn disc() -> Surface {
        Surface::new(0, 1).expect("valid")
    }

    pub fn annulus() -> Surface {
        Surface::new(0, 2).expect("valid")
    }

    pub fn pants() -> Surface {
        Surface::new(0, 3).expect("valid")
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary
    }

    /// Rank of H₁(Σ): 2g + b − 1.
    pub fn rank(&self) -> usize {
        2 * self.genus + self.boundary - 1
    }

    pub fn is_planar(&self) -> bool {
        self.genus == 0
    }

    pub fn is_disc(&self) -> bool {
        self.genus == 0 && self.boundary == 1
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary as i64
    }

    /// Pairing matrix, rows indexed by the relative basis.
    pub fn pairing(&self) -> &IntMatrix {
        &self.pairing
    }

    /// H₁(Σ) → H₁(Σ, ∂Σ) in the two bases.
    pub fn rho_matrix(&self) -> &IntMatrix {
        &self.rho
    }

    pub fn abs_labels(&self) -> Vec<String> {
        let mut v = Vec::with_capacity(self.rank());
        for i in 1..=self.genus {
            v.push(format!("a{i}"));
            v.push(format!("b{i}"));
        }
        v.extend((1..self.boundary).map(|j| format!("d{j}")));
        v
    }

    pub fn rel_labels(&self) -> Vec<String> {
        let mut v = Vec::with_capacity(self.rank());
        for i in 1..=self.genus {
            v.push(format!("alpha{i}"));
            v.push(format!("beta{i}"));
        }
        v.extend((2..=self.boundary).map(|i| format!("A{i}")));
        v
    }

    pub fn a_index(&self, i: usize) -> usize {
        assert!((1..=self.genus).contains(&i));
        2 * (i - 1)
    }

    pub fn b_index(&self, i: usize) -> usize {
        self.a_index(i) + 1
    }

    /// Index of d_j, 1 ≤ j ≤ b − 1.
    pub fn d_index(&self, j: usize) -> usize {
        assert!((1..self.boundary).contains(&j));
        2 * self.genus + j - 1
    }

    pub fn basis_vector(&self, index: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.rank()];
        v[index] = BigInt::one();
        v
    }

    /// The relative arc class A_i, 2 ≤ i ≤ b.
    pub fn arc(&self, i: usize) -> Result<Vec<BigInt>> {
        if !(2..=self.boundary).contains(&i) {
            return Err(invalid(
                "i",
                format!("arc index must lie in 2..={}", self.boundary),
            ));
        }
        Ok(self.basis_vector(2 * self.genus + i - 2))
    }

    /// relᵀ · P · abs.
    pub fn pair(&self, rel: &[BigInt], abs: &[BigInt]) -> Result<BigInt> {
        let m = self.rank();
        for v in [rel, abs] {
            if v.len() != m {
                return Err(BofillError::DimensionMismatch {
                    expected: m,
                    found: v.len(),
                });
            }
        }
        let mut total = BigInt::zero();
        for (i, r) in rel.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            for (j, a) in abs.iter().enumerate() {
                let p = &self.pairing[(i, j)];
                if !p.is_zero() && !a.is_zero() {
                    total += r * p * a;
                }
            }
        }
        Ok(total)
    }

    pub fn rho(&self, abs: &[BigInt]) -> Vec<BigInt> {
        self.rho.apply(abs)
    }

    /// Algebraic intersection of two absolute classes, ⟨rho(x), y⟩.
    pub fn intersection(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
        self.pair(&self.rho(x), y)
    }

    /// Σ_{j∈S} d_j on a planar surface.
    pub fn planar_curve(&self, subset: &[usize]) -> Result<CurveClass> {
        if !self.is_planar() {
            return Err(BofillError::NotPlanar(self.genus));
        }
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        if set.is_empty() {
            return Err(invalid(
                "subset",
                "empty subset bounds a disc; its twist is trivial",
            ));
        }
        if let Some(j) = set.iter().find(|&&j| j == 0 || j >= self.boundary) {
            return Err(invalid(
                "subset",
                format!(
                    "boundary label {j} outside 1..={}",
                    self.boundary.saturating_sub(1)
                ),
            ));
        }
        let mut coeffs = vec![BigInt::zero(); self.rank()];
        for &j in &set {
            coeffs[self.d_index(j)] = BigInt::one();
        }
        Ok(CurveClass {
            coeffs,
            planar_subset: Some(set),
        })
    }

    /// A general class given by its absolute coordinates.
    pub fn curve(&self, coeffs: Vec<BigInt>) -> Result<CurveClass> {
        if coeffs.len() != self.rank() {
            return Err(BofillError::DimensionMismatch {
                expected: self.rank(),
                found: coeffs.len(),
            });
        }
        Ok(CurveClass {
            coeffs,
            planar_subset: None,
        })
    }

    pub fn curve_from_i64(&self, coeffs: &[i64]) -> Result<CurveClass> {
        self.curve(coeffs.iter().map(|&x| BigInt::from(x)).collect())
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Σ_{{{},{}}}", self.genus, self.boundary)
    }
}

impl Serialize for Surface {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Surface", 3)?;
        st.serialize_field("genus", &self.genus)?;
        st.serialize_field("boundary", &self.boundary)?;
        st.serialize_field("rank", &self.rank())?;
        st.end()
    }
}

/// A homology class of a twist curve, optionally encoded by the set of
/// (non-outer) boundary components it encloses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveClass {
    pub coeffs: Vec<BigInt>,
    pub planar_subset: Option<BTreeSet<usize>>,
}

impl CurveClass {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero with coprime coordinates. Embedded nonseparating curves are
    /// primitive; other nonzero classes draw a warning upstream.
    pub fn is_primitive(&self) -> bool {
        let g = self.coeffs.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        g.is_one()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.planar_subset {
            Some(s) => {
                let items: Vec<String> = s.iter().map(|j| j.to_string()).collect();
                write!(f, "S{{{}}}", items.join(","))
            }
            None => {
                let items: Vec<String> = self.coeffs.iter().map(|x| x.to_string()).collect();
                write!(f, "v({})", items.join(","))
            }
        }
    }
}

impl Serialize for CurveClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = 1 + self.planar_subset.is_some() as usize;
        let mut st = s.serialize_struct("CurveClass", n)?;
        st.serialize_field("coeffs", &BigVecJson(&self.coeffs))?;
        if let Some(sub) = &self.planar_subset {
            st.serialize_field("subset", sub)?;
        }
        st.end()
    }
}

/// `acc += k · v`.
pub(crate) fn add_scaled(acc: &mut [BigInt], k: &BigInt, v: &[BigInt]) {
    if k.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += k * x;
        }
    }
}
