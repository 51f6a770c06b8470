//! Invariants of open books: H₁ of 3-dimensional open books from a relation
//! matrix, the pants factorization with its orbifold data, and the Brieskorn
//! family OBD(D*Sⁿ, τ^k).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::{cokernel, rational_rank, AbelianGroup, IntMatrix};
use crate::error::{invalid, BofillError, Result};
use crate::mcg::TwistWord;
use crate::surface::{add_scaled, Surface};

/// Absolute class of the loop A_i · φ(A_i)⁻¹ (up to a global sign), by
/// pushing the arc through the word one relative transvection at a time.
pub fn relative_delta(word: &TwistWord, i: usize) -> Result<Vec<BigInt>> {
    let s = word.surface();
    let mut r = s.arc(i)?;
    let mut delta = vec![BigInt::zero(); s.rank()];
    for l in word.letters() {
        let k = s.pair(&r, &l.curve.coeffs)? * l.exponent;
        if k.is_zero() {
            continue;
        }
        add_scaled(&mut delta, &k, &l.curve.coeffs);
        let rc = s.rho(&l.curve.coeffs);
        add_scaled(&mut r, &k, &rc);
    }
    Ok(delta)
}

/// Relations presenting H₁(OBD(Σ, φ)) as a quotient of H₁(Σ).
#[derive(Clone, Debug, PartialEq)]
pub struct OpenBookPresentation {
    pub action: IntMatrix,
    /// Rows (M − I)e_k for each basis vector, then δ_i for i = 2..b.
    pub relations: IntMatrix,
}

impl OpenBookPresentation {
    pub fn new(word: &TwistWord) -> Result<OpenBookPresentation> {
        let s = word.surface();
        let m = s.rank();
        let action = word.homology_action();
        let diff = action.sub(&IntMatrix::identity(m))?;
        let mut rows: Vec<Vec<BigInt>> = (0..m).map(|k| diff.column(k)).collect();
        for i in 2..=s.boundary_count() {
            rows.push(relative_delta(word, i)?);
        }
        Ok(OpenBookPresentation {
            action,
            relations: IntMatrix::from_big_rows(m, rows)?,
        })
    }

    pub fn h1(&self) -> AbelianGroup {
        cokernel(&self.relations)
    }

    pub fn relation_rank(&self) -> usize {
        rational_rank(&self.relations)
    }
}

pub fn h1_open_book(word: &TwistWord) -> Result<AbelianGroup> {
    Ok(OpenBookPresentation::new(word)?.h1())
}

pub fn b1_open_book(word: &TwistWord) -> Result<usize> {
    Ok(h1_open_book(word)?.free_rank)
}

/// H₁(Σ; ℚ) → H₁(V; ℚ) is injective iff every relation vanishes rationally.
pub fn page_injects_rationally(word: &TwistWord) -> Result<bool> {
    Ok(OpenBookPresentation::new(word)?.relation_rank() == 0)
}

fn ratio(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// −1 − Σ 1/m_i for the given cone coefficients.
pub fn chi_orb_coefficients(m: &[i64]) -> Result<BigRational> {
    let mut chi = -BigRational::one();
    for (idx, &mi) in m.iter().enumerate() {
        if mi == 0 {
            return Err(BofillError::DivisionByZero { index: idx + 1 });
        }
        chi -= ratio(mi).recip();
    }
    Ok(chi)
}

/// −1 − Σ 1/(N + a_i).
pub fn chi_orb(a: [i64; 3], n: i64) -> Result<BigRational> {
    chi_orb_coefficients(&a.map(|ai| n + ai))
}

/// The textbook value for a sphere with three cone points of orders |m_i|:
/// 2 − Σ (1 − 1/|m_i|).
pub fn chi_orb_standard(m: &[i64]) -> Result<BigRational> {
    let mut chi = ratio(2);
    for (idx, &mi) in m.iter().enumerate() {
        if mi == 0 {
            return Err(BofillError::DivisionByZero { index: idx + 1 });
        }
        chi -= BigRational::one() - ratio(mi.abs()).recip();
    }
    Ok(chi)
}

/// χ_orb for one side of the factorization, in both conventions.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbifoldSide {
    pub coefficients: [i64; 3],
    pub chi: BigRational,
    pub chi_standard: BigRational,
}

impl OrbifoldSide {
    fn new(coefficients: [i64; 3]) -> Result<OrbifoldSide> {
        Ok(OrbifoldSide {
            coefficients,
            chi: chi_orb_coefficients(&coefficients)?,
            chi_standard: chi_orb_standard(&coefficients)?,
        })
    }

    /// The two conventions disagree on whether χ < 0.
    pub fn sign_differs(&self) -> bool {
        self.chi.is_negative() != self.chi_standard.is_negative()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PantsFactorization {
    pub a: [i64; 3],
    pub n: i64,
    /// F = φ ∘ τ^N = ∏ τ_i^{N + a_i}.
    pub f: TwistWord,
    /// G = τ^{−N}.
    pub g: TwistWord,
    pub f_side: OrbifoldSide,
    pub g_side: OrbifoldSide,
    /// r_i = −1/(N + a_i).
    pub surgery_coefficients: [BigRational; 3],
    /// G then F equals φ in H₁ and in the abelianization.
    pub recomposes: bool,
}

/// Boundary-parallel curves of the pants: boundary 1, boundary 2, and the
/// outer boundary (which encloses both inner ones).
pub const PANTS_BOUNDARY_SUBSETS: [&[usize]; 3] = [&[1], &[2], &[1, 2]];

/// τ₁^{a₁} τ₂^{a₂} τ₃^{a₃} on the pants, skipping zero exponents.
pub fn pants_word(a: [i64; 3]) -> TwistWord {
    let mut w = TwistWord::identity(&Surface::pants());
    for (sub, e) in PANTS_BOUNDARY_SUBSETS.iter().zip(a) {
        if e != 0 {
            w = w.planar_twist(sub, e).expect("valid pants letter");
        }
    }
    w
}

/// Smallest N ≥ 1 with N + a_i ≥ 1 and both orbifold Euler characteristics negative.
pub fn pants_factorization(a: [i64; 3]) -> Result<PantsFactorization> {
    let start = 1i64.max(1 - a.iter().copied().min().expect("three entries"));
    let mut n = start;
    loop {
        let f_side = OrbifoldSide::new(a.map(|ai| n + ai))?;
        let g_side = OrbifoldSide::new([-n; 3])?;
        if f_side.chi.is_negative() && g_side.chi.is_negative() {
            let f = pants_word(f_side.coefficients);
            let g = pants_word(g_side.coefficients);
            let phi = pants_word(a);
            let composed = g.then(&f)?;
            let recomposes = h1_open_book(&composed)? == h1_open_book(&phi)?
                && composed.planar_abelianization()? == phi.planar_abelianization()?;
            let surgery_coefficients = f_side.coefficients.map(|m| -ratio(m).recip());
            return Ok(PantsFactorization {
                a,
                n,
                f,
                g,
                f_side,
                g_side,
                surgery_coefficients,
                recomposes,
            });
        }
        n += 1;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BrieskornPoint {
    pub n: u32,
    pub k: i64,
}

impl BrieskornPoint {
    pub fn new(n: u32, k: i64) -> Result<BrieskornPoint> {
        if n < 1 {
            return Err(invalid("n", "sphere dimension must be at least 1"));
        }
        Ok(BrieskornPoint { n, k })
    }
}

impl Serialize for BrieskornPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BrieskornPoint", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("k", &self.k)?;
        st.end()
    }
}

fn parity_sign(e: u64) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Action of one Dehn twist on H_n(D*Sⁿ) ≅ ℤ (Picard–Lefschetz):
/// x ↦ x + (−1)^{(n+1)(n+2)/2} ⟨x, v⟩ v with ⟨v, v⟩ = (−1)^{n(n−1)/2} χ(Sⁿ).
pub fn brieskorn_twist_action(n: u32) -> i64 {
    let n = n as u64;
    let euler = if n.is_multiple_of(2) { 2 } else { 0 };
    let self_int = parity_sign(n * (n.saturating_sub(1)) / 2) * euler;
    1 + parity_sign((n + 1) * (n + 2) / 2) * self_int
}

/// H_n(OBD(D*Sⁿ, τ^k)) = coker of the variation Σ_{j<|k|} T^j.
pub fn brieskorn_homology(p: BrieskornPoint) -> Result<AbelianGroup> {
    BrieskornPoint::new(p.n, p.k)?;
    let t = BigInt::from(brieskorn_twist_action(p.n));
    let mut var = BigInt::zero();
    let mut power = BigInt::one();
    for _ in 0..p.k.unsigned_abs() {
        var += &power;
        power *= &t;
    }
    let entry = IntMatrix::new(1, 1, vec![var])?;
    Ok(cokernel(&entry))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&y| BigInt::from(y)).collect()
    }

    #[test]
    fn deltas() {
        let ann = Surface::annulus();
        let w = TwistWord::parse(&ann, "[S{1}:4]").unwrap();
        assert_eq!(relative_delta(&w, 2).unwrap(), v(&[-4]));
        assert!(relative_delta(&w, 3).is_err());
        assert_eq!(
            relative_delta(&TwistWord::identity(&ann), 2).unwrap(),
            v(&[0])
        );
        assert_eq!(
            relative_delta(&pants_word([2, 3, 5]), 2).unwrap(),
            v(&[-2, 3])
        );
    }

    #[test]
    fn lens_spaces_and_identity() {
        for k in -3i64..=3 {
            let w = TwistWord::identity(&Surface::annulus());
            let w = if k == 0 {
                w
            } else {
                w.planar_twist(&[1], k).unwrap()
            };
            assert_eq!(h1_open_book(&w).unwrap(), AbelianGroup::cyclic(k));
        }
        let s = Surface::new(2, 3).unwrap();
        assert_eq!(
            h1_open_book(&TwistWord::identity(&s)).unwrap(),
            AbelianGroup::free(6)
        );
    }

    #[test]
    fn betti_numbers() {
        let w = TwistWord::parse(&Surface::annulus(), "[S{1}:3]").unwrap();
        assert_eq!(b1_open_book(&w).unwrap(), 0);
        assert!(!page_injects_rationally(&w).unwrap());
        assert_eq!(
            b1_open_book(&TwistWord::identity(&Surface::pants())).unwrap(),
            2
        );
        let t = TwistWord::parse(&Surface::new(1, 1).unwrap(), "[v(1,0):1]").unwrap();
        assert_eq!(b1_open_book(&t).unwrap(), 1);
        assert_eq!(
            h1_open_book(&pants_word([1, 1, 1])).unwrap(),
            AbelianGroup::cyclic(3)
        );
        assert!(!page_injects_rationally(&pants_word([1, 1, 1])).unwrap());
    }

    #[test]
    fn orbifold_euler_characteristics() {
        assert_eq!(chi_orb([0, 0, 0], 2).unwrap(), q(-5, 2));
        assert_eq!(chi_orb_coefficients(&[-3, -3, -3]).unwrap(), q(0, 1));
        assert_eq!(chi_orb([1, 2, 3], 1).unwrap(), q(-25, 12));
        assert_eq!(
            chi_orb([-2, 0, 0], 2),
            Err(BofillError::DivisionByZero { index: 1 })
        );
        assert_eq!(chi_orb_standard(&[2, 3, 7]).unwrap(), q(-1, 42));
    }

    #[test]
    fn factorizations() {
        let f = pants_factorization([0, 0, 0]).unwrap();
        assert_eq!(f.n, 4);
        assert_eq!(f.f_side.chi, q(-7, 4));
        assert_eq!(f.g_side.chi, q(-1, 4));
        assert!(f.recomposes);
        assert_eq!(f.f.to_string(), "[S{1}:+4][S{2}:+4][S{1,2}:+4]");
        assert_eq!(pants_factorization([-2, 0, 0]).unwrap().n, 4);
        assert_eq!(pants_factorization([5, 5, 5]).unwrap().n, 4);
        assert_eq!(pants_factorization([-6, 1, 0]).unwrap().n, 7);
    }

    #[test]
    fn brieskorn_values() {
        let h = |n, k| {
            brieskorn_homology(BrieskornPoint { n, k })
                .unwrap()
                .to_string()
        };
        assert_eq!(h(3, 5), "Z/5");
        assert_eq!(h(2, 3), "0");
        assert_eq!(h(2, 2), "Z");
        assert_eq!(h(4, 0), "Z");
        assert_eq!(h(1, -4), "Z/4");
        assert!(brieskorn_homology(BrieskornPoint { n: 0, k: 1 }).is_err());
    }
}
