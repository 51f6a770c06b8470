//! Dehn-twist words and their actions on homology.
//!
//! A word `[c₁:e₁][c₂:e₂]…[c_L:e_L]` applies its letters left to right, so the
//! mapping class is τ_{c_L}^{e_L} ∘ … ∘ τ_{c₁}^{e₁}.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::{BigVecJson, IntMatrix};
use crate::error::{invalid, BofillError, Result};
use crate::surface::{CurveClass, Surface};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub curve: CurveClass,
    pub exponent: i64,
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Letter", 2)?;
        st.serialize_field("curve", &self.curve)?;
        st.serialize_field("exponent", &self.exponent)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistWord {
    surface: Surface,
    letters: Vec<Letter>,
}

impl TwistWord {
    pub fn identity(surface: &Surface) -> TwistWord {
        TwistWord {
            surface: surface.clone(),
            letters: Vec::new(),
        }
    }

    pub fn new(surface: &Surface, letters: Vec<Letter>) -> Result<TwistWord> {
        let mut w = TwistWord::identity(surface);
        for l in letters {
            w.push(l)?;
        }
        Ok(w)
    }

    pub fn push(&mut self, letter: Letter) -> Result<()> {
        if letter.exponent == 0 {
            return Err(invalid("exponent", "twist exponents must be nonzero"));
        }
        if letter.curve.len() != self.surface.rank() {
            return Err(BofillError::DimensionMismatch {
                expected: self.surface.rank(),
                found: letter.curve.len(),
            });
        }
        self.letters.push(letter);
        Ok(())
    }

    /// Appends τ_c^e.
    pub fn twist(mut self, curve: CurveClass, exponent: i64) -> Result<TwistWord> {
        self.push(Letter { curve, exponent })?;
        Ok(self)
    }

    /// Appends τ_S^e for a boundary subset S of a planar surface.
    pub fn planar_twist(self, subset: &[usize], exponent: i64) -> Result<TwistWord> {
        let c = self.surface.planar_curve(subset)?;
        self.twist(c, exponent)
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The inverse mapping class: letters reversed with negated exponents.
    pub fn inverse(&self) -> TwistWord {
        TwistWord {
            surface: self.surface.clone(),
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    curve: l.curve.clone(),
                    exponent: -l.exponent,
                })
                .collect(),
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &TwistWord) -> Result<TwistWord> {
        if self.surface != other.surface {
            return Err(invalid("word", "words live on different surfaces"));
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Ok(TwistWord {
            surface: self.surface.clone(),
            letters,
        })
    }

    /// ψ · self · ψ⁻¹ as words.
    pub fn conjugate_by(&self, psi: &TwistWord) -> Result<TwistWord> {
        psi.then(self)?.then(&psi.inverse())
    }

    /// w₁ w₂ w₁⁻¹ w₂⁻¹.
    pub fn commutator(a: &TwistWord, b: &TwistWord) -> Result<TwistWord> {
        a.then(b)?.then(&a.inverse())?.then(&b.inverse())
    }

    /// Merges adjacent twists about the same curve and drops zero powers.
    pub fn free_reduce(&self) -> TwistWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            match out.last_mut() {
                Some(top) if top.curve == l.curve => {
                    top.exponent += l.exponent;
                    if top.exponent == 0 {
                        out.pop();
                    }
                }
                _ => out.push(l.clone()),
            }
        }
        TwistWord {
            surface: self.surface.clone(),
            letters: out,
        }
    }

    /// Every exponent has the same sign (vacuously true when empty).
    pub fn is_sign_coherent(&self) -> bool {
        self.letters.iter().all(|l| l.exponent > 0) || self.letters.iter().all(|l| l.exponent < 0)
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.exponent > 0)
    }

    /// Every letter carries a boundary-subset encoding.
    pub fn is_subset_encoded(&self) -> bool {
        self.letters.iter().all(|l| l.curve.planar_subset.is_some())
    }

    /// Nonzero, non-primitive curve classes, which cannot be simple closed
    /// nonseparating curves.
    pub fn warnings(&self) -> Vec<String> {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.curve.is_zero() && !l.curve.is_primitive())
            .map(|(i, l)| format!("letter {} has non-primitive class {}", i + 1, l.curve))
            .collect()
    }

    /// Parses the bracket syntax, e.g. `[S{1,3}:+2][v(1,0,-1):-1]`.
    pub fn parse(surface: &Surface, text: &str) -> Result<TwistWord> {
        let mut p = WordParser {
            bytes: text.as_bytes(),
            pos: 0,
        };
        let mut word = TwistWord::identity(surface);
        p.skip_ws();
        while !p.done() {
            p.expect(b'[')?;
            p.skip_ws();
            let curve_pos = p.pos;
            let curve = match p.peek() {
                Some(b'S') => {
                    p.pos += 1;
                    p.expect(b'{')?;
                    let items = p.list(b'}')?;
                    let subset: Vec<usize> = items
                        .iter()
                        .map(|&x| {
                            usize::try_from(x)
                                .map_err(|_| p.err_at(curve_pos, "negative boundary label"))
                        })
                        .collect::<Result<_>>()?;
                    surface
                        .planar_curve(&subset)
                        .map_err(|e| p.err_at(curve_pos, &e.to_string()))?
                }
                Some(b'v') => {
                    p.pos += 1;
                    p.expect(b'(')?;
                    let items = p.list(b')')?;
                    surface
                        .curve_from_i64(&items)
                        .map_err(|e| p.err_at(curve_pos, &e.to_string()))?
                }
                _ => return Err(p.err("expected 'S{...}' or 'v(...)'")),
            };
            p.skip_ws();
            p.expect(b':')?;
            p.skip_ws();
            let exp_pos = p.pos;
            let exponent = p.integer()?;
            if exponent == 0 {
                return Err(p.err_at(exp_pos, "exponent must be nonzero"));
            }
            p.skip_ws();
            p.expect(b']')?;
            p.skip_ws();
            word.push(Letter { curve, exponent })?;
        }
        Ok(word)
    }

    /// Matrix of φ_* on H₁(Σ) in the absolute basis (columns are images).
    pub fn homology_action(&self) -> IntMatrix {
        let m = self.surface.rank();
        let mut acc = IntMatrix::identity(m);
        for l in &self.letters {
            // T = I + e·c·fᵀ with f = rhoᵀ P c, so that fᵀx = ⟨rho(x), c⟩.
            let f = covector(&self.surface, &l.curve.coeffs);
            let e = BigInt::from(l.exponent);
            let row: Vec<BigInt> = (0..m)
                .map(|j| (0..m).map(|k| &f[k] * &acc[(k, j)]).sum::<BigInt>() * &e)
                .collect();
            for (i, ci) in l.curve.coeffs.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                for (j, r) in row.iter().enumerate() {
                    if !r.is_zero() {
                        acc[(i, j)] += ci * r;
                    }
                }
            }
        }
        acc
    }

    pub fn is_homologically_trivial(&self) -> bool {
        self.homology_action().is_identity()
    }

    /// Image under the capping map to ∏ MCG(annulus) ≅ ℤ^(b choose 2).
    pub fn planar_abelianization(&self) -> Result<AbelianizationVector> {
        if !self.surface.is_planar() {
            return Err(BofillError::NotPlanar(self.surface.genus()));
        }
        let b = self.surface.boundary_count();
        let mut v = AbelianizationVector::zero(b);
        for (idx, l) in self.letters.iter().enumerate() {
            let s = l
                .curve
                .planar_subset
                .as_ref()
                .ok_or(BofillError::MissingSubset(idx + 1))?;
            let e = BigInt::from(l.exponent);
            for (k, (i, j)) in v.pairs().enumerate() {
                if s.contains(&i) != s.contains(&j) {
                    v.coords[k] += &e;
                }
            }
        }
        Ok(v)
    }

    /// True iff the abelianization vanishes. False certifies φ ∉ [G, G];
    /// true is only the absence of this obstruction.
    pub fn in_commutator_kernel(&self) -> Result<bool> {
        Ok(self.planar_abelianization()?.is_zero())
    }
}

/// f = rhoᵀ · P · c, the covector x ↦ ⟨rho(x), c⟩.
pub(crate) fn covector(surface: &Surface, c: &[BigInt]) -> Vec<BigInt> {
    let pc = surface.pairing().apply(c);
    surface.rho_matrix().transpose().apply(&pc)
}

/// The matrix of a single transvection T_c^e.
pub fn transvection(surface: &Surface, curve: &CurveClass, exponent: i64) -> Result<IntMatrix> {
    Ok(TwistWord::identity(surface)
        .twist(curve.clone(), exponent)?
        .homology_action())
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "[{}:{:+}]", l.curve, l.exponent)?;
        }
        Ok(())
    }
}

impl Serialize for TwistWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TwistWord", 2)?;
        st.serialize_field("surface", &self.surface)?;
        st.serialize_field("word", &self.to_string())?;
        st.end()
    }
}

struct WordParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl WordParser<'_> {
    fn done(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, message: &str) -> BofillError {
        self.err_at(self.pos, message)
    }

    fn err_at(&self, position: usize, message: &str) -> BofillError {
        BofillError::WordSyntax {
            position,
            message: message.to_string(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        if matches!(self.peek(), Some(b'+' | b'-')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");
        text.parse::<i64>()
            .map_err(|_| self.err_at(start, "expected an integer"))
    }

    /// Comma-separated integers up to `close`.
    fn list(&mut self, close: u8) -> Result<Vec<i64>> {
        let mut out = Vec::new();
        self.skip_ws();
        if self.peek() == Some(close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            self.skip_ws();
            out.push(self.integer()?);
            self.skip_ws();
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(c) if c == close => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.err(&format!("expected ',' or '{}'", close as char))),
            }
        }
    }
}

/// Coordinates indexed by unordered boundary pairs {i, j}, lexicographic;
/// label b is the outer boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianizationVector {
    boundary: usize,
    pub coords: Vec<BigInt>,
}

impl AbelianizationVector {
    pub fn zero(boundary: usize) -> AbelianizationVector {
        AbelianizationVector {
            boundary,
            coords: vec![BigInt::zero(); boundary * boundary.saturating_sub(1) / 2],
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let b = self.boundary;
        (1..=b).flat_map(move |i| (i + 1..=b).map(move |j| (i, j)))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &AbelianizationVector) -> AbelianizationVector {
        AbelianizationVector {
            boundary: self.boundary,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Display for AbelianizationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", items.join(","))
    }
}

impl Serialize for AbelianizationVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[usize; 2]> = self.pairs().map(|(i, j)| [i, j]).collect();
        let mut st = s.serialize_struct("AbelianizationVector", 2)?;
        st.serialize_field("pairs", &pairs)?;
        st.serialize_field("coords", &BigVecJson(&self.coords))?;
        st.end()
    }
}

/// Result of attaching a 1-handle and adding one positive twist over it.
#[derive(Clone, Debug, PartialEq)]
pub struct Stabilization {
    pub word: TwistWord,
    /// The twist curve running over the new handle.
    pub new_curve: CurveClass,
    /// Columns: images of the old absolute basis in the new one.
    pub basis_map: IntMatrix,
}

impl Stabilization {
    pub fn surface(&self) -> &Surface {
        self.word.surface()
    }
}

/// Positive stabilization along a 1-handle with feet on boundaries `i` and `j`.
///
/// For `i ≠ j` the page becomes Σ_{g+1,b−1}: old d_i becomes b_{g+1}, the
/// merged boundary takes j's label, and the new twist is about a_{g+1}. For
/// `i = j` the page becomes Σ_{g,b+1}: boundary i splits, the new piece gets
/// label b (the old outer boundary moves to b+1) and the new twist is about it.
pub fn positive_stabilization(word: &TwistWord, i: usize, j: usize) -> Result<Stabilization> {
    let s = word.surface();
    let (g, b) = (s.genus(), s.boundary_count());
    for (name, v) in [("i", i), ("j", j)] {
        if !(1..=b).contains(&v) {
            return Err(invalid(name, format!("boundary label {v} outside 1..={b}")));
        }
    }
    let m = s.rank();
    if i == j {
        let ns = Surface::new(g, b + 1)?;
        let mut map = IntMatrix::zeros(m + 1, m);
        for k in 0..m {
            map[(k, k)] = BigInt::one();
        }
        if i < b {
            map[(ns.d_index(b), s.d_index(i))] = BigInt::one();
        }
        let letters = word
            .letters()
            .iter()
            .map(|l| {
                let coeffs = map.apply(&l.curve.coeffs);
                let planar_subset = l.curve.planar_subset.as_ref().map(|sub| {
                    let mut sub = sub.clone();
                    if sub.contains(&i) {
                        sub.insert(b);
                    }
                    sub
                });
                Letter {
                    curve: CurveClass {
                        coeffs,
                        planar_subset,
                    },
                    exponent: l.exponent,
                }
            })
            .collect();
        let new_curve = if ns.is_planar() {
            ns.planar_curve(&[b])?
        } else {
            ns.curve(ns.basis_vector(ns.d_index(b)))?
        };
        let word = TwistWord::new(&ns, letters)?.twist(new_curve.clone(), 1)?;
        return Ok(Stabilization {
            word,
            new_curve,
            basis_map: map,
        });
    }

    let (i, j) = if i == b { (j, i) } else { (i, j) };
    let ns = Surface::new(g + 1, b - 1)?;
    let pos = |k: usize| if k < i { k } else { k - 1 };
    let mut map = IntMatrix::zeros(m + 1, m);
    for k in 0..2 * g {
        map[(k, k)] = BigInt::one();
    }
    let handle_b = ns.b_index(g + 1);
    for k in 1..b {
        let col = s.d_index(k);
        if k == i {
            map[(handle_b, col)] = BigInt::one();
        } else {
            map[(ns.d_index(pos(k)), col)] = BigInt::one();
            if k == j {
                map[(handle_b, col)] = -BigInt::one();
            }
        }
    }
    let letters = word
        .letters()
        .iter()
        .map(|l| Letter {
            curve: CurveClass {
                coeffs: map.apply(&l.curve.coeffs),
                planar_subset: None,
            },
            exponent: l.exponent,
        })
        .collect();
    let new_curve = ns.curve(ns.basis_vector(ns.a_index(g + 1)))?;
    let word = TwistWord::new(&ns, letters)?.twist(new_curve.clone(), 1)?;
    Ok(Stabilization {
        word,
        new_curve,
        basis_map: map,
    })
}

/// Boundary subsets of a planar surface in a fixed order, for enumeration.
pub fn planar_subsets(boundary: usize) -> Vec<BTreeSet<usize>> {
    let inner = boundary.saturating_sub(1);
    (1u32..(1 << inner))
        .map(|mask| (1..=inner).filter(|j| mask & (1 << (j - 1)) != 0).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &Surface, text: &str) -> TwistWord {
        TwistWord::parse(s, text).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        let s = Surface::new(0, 4).unwrap();
        let w = word(&s, " [S{3,1}:2] [v(1,0,-1): -1]");
        assert_eq!(w.to_string(), "[S{1,3}:+2][v(1,0,-1):-1]");
        assert_eq!(word(&s, &w.to_string()), w);
        assert!(word(&s, "").is_empty());
    }

    #[test]
    fn parse_errors() {
        let s = Surface::pants();
        for bad in [
            "[S{1}:0]", "[S{}:1]", "[S{3}:1]", "[v(1):1]", "[S{1}:1", "S{1}:1]", "[x(1):1]",
            "[S{1}:+]",
        ] {
            assert!(
                matches!(
                    TwistWord::parse(&s, bad),
                    Err(BofillError::WordSyntax { .. })
                ),
                "{bad}"
            );
        }
    }

    #[test]
    fn single_twist_on_torus() {
        let t = Surface::new(1, 1).unwrap();
        let w = word(&t, "[v(1,0):1]");
        assert_eq!(
            w.homology_action(),
            IntMatrix::from_rows(&[[1, -1], [0, 1]])
        );
        assert!(!w.is_homologically_trivial());
        assert!(TwistWord::identity(&t).homology_action().is_identity());
    }

    #[test]
    fn annulus_core_twist_is_trivial_on_homology() {
        let w = word(&Surface::annulus(), "[S{1}:1]");
        assert_eq!(w.homology_action(), IntMatrix::from_rows(&[[1]]));
    }

    #[test]
    fn pants_abelianization() {
        let p = Surface::pants();
        let ab = |t: &str| word(&p, t).planar_abelianization().unwrap().to_string();
        assert_eq!(ab("[S{1}:1]"), "(1,1,0)");
        assert_eq!(ab("[S{1,2}:1]"), "(0,1,1)");
        assert_eq!(ab("[S{1}:1][S{2}:-1]"), "(0,1,-1)");
        assert!(!word(&p, "[S{1}:1][S{2}:-1]")
            .in_commutator_kernel()
            .unwrap());
        assert!(TwistWord::identity(&p).in_commutator_kernel().unwrap());
        let vec_letter = word(&p, "[v(1,0):1]");
        assert_eq!(
            vec_letter.planar_abelianization(),
            Err(BofillError::MissingSubset(1))
        );
        let torus = Surface::new(1, 2).unwrap();
        assert_eq!(
            TwistWord::identity(&torus).planar_abelianization(),
            Err(BofillError::NotPlanar(1))
        );
    }

    #[test]
    fn free_reduction() {
        let p = Surface::pants();
        let w = word(&p, "[S{1}:2][S{2}:1][S{2}:-1][S{1}:-2]");
        assert!(w.free_reduce().is_empty());
        let w = word(&p, "[S{1}:2][S{1}:1][S{2}:1]");
        assert_eq!(w.free_reduce().to_string(), "[S{1}:+3][S{2}:+1]");
    }

    #[test]
    fn stabilization_shapes() {
        let st = positive_stabilization(&TwistWord::identity(&Surface::disc()), 1, 1).unwrap();
        assert_eq!(st.surface(), &Surface::annulus());
        assert_eq!(st.word.to_string(), "[S{1}:+1]");
        let st = positive_stabilization(&TwistWord::identity(&Surface::annulus()), 1, 2).unwrap();
        assert_eq!(st.surface(), &Surface::new(1, 1).unwrap());
        assert_eq!(st.word.to_string(), "[v(1,0):+1]");
        assert_eq!(
            st.surface().euler_characteristic(),
            Surface::annulus().euler_characteristic() - 1
        );
        let st = positive_stabilization(&word(&Surface::pants(), "[S{1}:1]"), 1, 1).unwrap();
        assert_eq!(st.word.to_string(), "[S{1,3}:+1][S{3}:+1]");
        assert!(positive_stabilization(&TwistWord::identity(&Surface::pants()), 0, 1).is_err());
    }

    #[test]
    fn subsets_enumerated() {
        assert_eq!(planar_subsets(3).len(), 3);
        assert_eq!(planar_subsets(1).len(), 0);
    }
}
