//! Operator-letter embedding and word evaluation.

use alloc::format;
use alloc::vec::Vec;

use super::matrix::CMatrix;
use super::{TensorError, MAX_M};
use crate::word::{label, LetterKind, OpLetter, OpWord, SpaceLabel, TetraEquation};

/// The six external spaces in canonical (lexicographic) order:
/// `(12) (13) (14) (23) (24) (34)`.
#[derive(Clone, Debug)]
pub struct GlobalSpaceBasis {
    labels: [SpaceLabel; 6],
}

impl Default for GlobalSpaceBasis {
    fn default() -> Self {
        Self::new()
    }
}

impl GlobalSpaceBasis {
    pub fn new() -> Self {
        Self {
            labels: [
                label(1, 2),
                label(1, 3),
                label(1, 4),
                label(2, 3),
                label(2, 4),
                label(3, 4),
            ],
        }
    }

    pub fn labels(&self) -> &[SpaceLabel; 6] {
        &self.labels
    }

    pub fn position(&self, l: &SpaceLabel) -> Option<usize> {
        self.labels.iter().position(|b| b == l)
    }
}

/// Tensors assigned to the letter alphabet: `S` and `S~` on `m^3`, `Q` on
/// `m^2`.
#[derive(Clone, Debug)]
pub struct ModelBundle {
    pub m: usize,
    pub s: CMatrix,
    pub stilde: CMatrix,
    pub q: CMatrix,
}

impl ModelBundle {
    /// Bundle with explicit tensors; `stilde = None` derives it from
    /// unitarity, `q = None` uses the identity.
    pub fn new(
        m: usize,
        s: CMatrix,
        stilde: Option<CMatrix>,
        q: Option<CMatrix>,
    ) -> Result<Self, TensorError> {
        if m == 0 || m > MAX_M {
            return Err(TensorError::DimensionGuard(m, MAX_M));
        }
        let m3 = m * m * m;
        let m2 = m * m;
        if s.dim() != m3 {
            return Err(TensorError::Shape { expected: m3 * m3, got: s.dim() * s.dim() });
        }
        let stilde = match stilde {
            Some(t) => {
                if t.dim() != m3 {
                    return Err(TensorError::Shape { expected: m3 * m3, got: t.dim() * t.dim() });
                }
                t
            }
            None => stilde_from_unitarity(&s, m)?,
        };
        let q = match q {
            Some(t) => {
                if t.dim() != m2 {
                    return Err(TensorError::Shape { expected: m2 * m2, got: t.dim() * t.dim() });
                }
                t
            }
            None => CMatrix::identity(m2),
        };
        Ok(Self { m, s, stilde, q })
    }

    pub fn identity(m: usize) -> Result<Self, TensorError> {
        Self::new(m, CMatrix::identity(m * m * m), None, None)
    }
}

/// Embed a small operator on `op_sites` legs of dimension `dim` into the
/// product of `total_sites` spaces, acting on the sites listed in
/// `positions` (in the operator's own leg order) and as identity elsewhere.
pub fn embed_on_sites(
    op: &CMatrix,
    positions: &[usize],
    total_sites: usize,
    dim: usize,
) -> CMatrix {
    let small = dim.pow(positions.len() as u32);
    assert_eq!(op.dim(), small, "operator size does not match its leg count");
    debug_assert!(positions.iter().all(|&p| p < total_sites));

    let total = dim.pow(total_sites as u32);
    // site strides in the row-major state index (leftmost site is most
    // significant)
    let stride: Vec<usize> = (0..total_sites)
        .map(|p| dim.pow((total_sites - 1 - p) as u32))
        .collect();
    let free: Vec<usize> = (0..total_sites).filter(|p| !positions.contains(p)).collect();

    let decode = |mut idx: usize, sites: &[usize]| -> usize {
        // base offset contributed by digits of `idx` laid onto `sites`
        let mut offset = 0;
        for &site in sites.iter().rev() {
            offset += (idx % dim) * stride[site];
            idx /= dim;
        }
        offset
    };

    let free_states = dim.pow(free.len() as u32);
    let mut out = CMatrix::zeros(total);
    for fs in 0..free_states {
        let base = decode(fs, &free);
        for r in 0..small {
            let row = base + decode(r, positions);
            for c in 0..small {
                let v = op.get(r, c);
                if v == num_complex::Complex64::ZERO {
                    continue;
                }
                let col = base + decode(c, positions);
                out.set(row, col, v);
            }
        }
    }
    out
}

/// Embed one letter into the full `m^6` product over the canonical basis.
/// Inverted letters embed the inverse of the letter's matrix.
pub fn embed_letter(
    letter: &OpLetter,
    bundle: &ModelBundle,
    basis: &GlobalSpaceBasis,
) -> Result<CMatrix, TensorError> {
    let mut positions = Vec::with_capacity(letter.labels.len());
    for l in &letter.labels {
        if !l.is_normalized() {
            return Err(TensorError::LabelOutsideBasis(format!("{l}")));
        }
        let p = basis
            .position(l)
            .ok_or_else(|| TensorError::LabelOutsideBasis(format!("{l}")))?;
        positions.push(p);
    }
    let small = match letter.kind {
        LetterKind::S => &bundle.s,
        LetterKind::Stilde => &bundle.stilde,
        LetterKind::Q => &bundle.q,
    };
    let small = if letter.inverted { small.inverse()? } else { small.clone() };
    Ok(embed_on_sites(&small, &positions, 6, bundle.m))
}

/// Matrix of an operator word: the product of its embedded letters,
/// leftmost letter leftmost.
pub fn evaluate(word: &OpWord, bundle: &ModelBundle) -> Result<CMatrix, TensorError> {
    let basis = GlobalSpaceBasis::new();
    let total = bundle.m.pow(6);
    let mut acc = CMatrix::identity(total);
    for letter in word.letters() {
        acc = acc.mul(&embed_letter(letter, bundle, &basis)?);
    }
    Ok(acc)
}

/// Max-modulus entry of `evaluate(lhs) - evaluate(rhs)`.
pub fn residual(eq: &TetraEquation, bundle: &ModelBundle) -> Result<f64, TensorError> {
    Ok(evaluate(&eq.lhs, bundle)?.max_abs_diff(&evaluate(&eq.rhs, bundle)?))
}

/// Leg-reversal permutation on `m^3` (`|abc> -> |cba>`).
fn leg_reversal(m: usize) -> CMatrix {
    let n = m * m * m;
    let mut p = CMatrix::zeros(n);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let from = (a * m + b) * m + c;
                let to = (c * m + b) * m + a;
                p.set(to, from, num_complex::Complex64::ONE);
            }
        }
    }
    p
}

/// The `S~` tensor forced by unitarity: the embedded `S~`-letter on
/// `(jk)(ik)(ij)` composed with the `S`-letter on `(ij)(ik)(jk)` must be the
/// identity on the triple space, i.e. `S~ = P S^-1 P` with `P` the leg
/// reversal.
pub fn stilde_from_unitarity(s: &CMatrix, m: usize) -> Result<CMatrix, TensorError> {
    let expected = m * m * m;
    if s.dim() != expected {
        return Err(TensorError::Shape {
            expected: expected * expected,
            got: s.dim() * s.dim(),
        });
    }
    let p = leg_reversal(m);
    Ok(p.mul(&s.inverse()?).mul(&p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use crate::word::{OpLetter, OpWord};

    fn s_123() -> OpLetter {
        OpLetter::s(label(1, 2), label(1, 3), label(2, 3)).unwrap()
    }

    #[test]
    fn identity_letter_embeds_to_identity() {
        let bundle = ModelBundle::identity(2).unwrap();
        let basis = GlobalSpaceBasis::new();
        let e = embed_letter(&s_123(), &bundle, &basis).unwrap();
        assert_eq!(e, CMatrix::identity(64));
    }

    #[test]
    fn embedded_shape_is_m6() {
        let mut rng = SplitMix64::new(2);
        let bundle =
            ModelBundle::new(2, CMatrix::random(8, &mut rng), None, None).unwrap();
        let basis = GlobalSpaceBasis::new();
        let e = embed_letter(&s_123(), &bundle, &basis).unwrap();
        assert_eq!(e.dim(), 64);
    }

    #[test]
    fn contiguous_embedding_is_kron() {
        // legs (12)(13)(14) occupy the three leftmost sites in canonical
        // order, so the embedding is op (x) id
        let mut rng = SplitMix64::new(9);
        let op = CMatrix::random(8, &mut rng);
        let e = embed_on_sites(&op, &[0, 1, 2], 6, 2);
        assert_eq!(e, op.kron(&CMatrix::identity(8)));
        // and on the rightmost sites it is id (x) op
        let e = embed_on_sites(&op, &[3, 4, 5], 6, 2);
        assert_eq!(e, CMatrix::identity(8).kron(&op));
    }

    #[test]
    fn conjugation_consistency() {
        // a letter with permuted leg order equals the permutation conjugate
        let mut rng = SplitMix64::new(4);
        let op = CMatrix::random(4, &mut rng);
        let fwd = embed_on_sites(&op, &[1, 3], 6, 2);
        let swapped = embed_on_sites(&op, &[3, 1], 6, 2);
        // swap legs of op directly
        let mut op_swapped = CMatrix::zeros(4);
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        op_swapped.set(b * 2 + a, d * 2 + c, op.get(a * 2 + b, c * 2 + d));
                    }
                }
            }
        }
        let direct = embed_on_sites(&op_swapped, &[1, 3], 6, 2);
        assert_eq!(swapped, direct);
        assert_ne!(fwd, swapped);
    }

    #[test]
    fn disjoint_letters_commute() {
        let mut rng = SplitMix64::new(6);
        let bundle = ModelBundle::new(
            2,
            CMatrix::random(8, &mut rng),
            Some(CMatrix::random(8, &mut rng)),
            Some(CMatrix::random(4, &mut rng)),
        )
        .unwrap();
        let basis = GlobalSpaceBasis::new();
        let q1 = OpLetter::q(label(1, 2), label(3, 4)).unwrap();
        let q2 = OpLetter::q(label(1, 3), label(2, 4)).unwrap();
        let a = embed_letter(&q1, &bundle, &basis).unwrap();
        let b = embed_letter(&q2, &bundle, &basis).unwrap();
        let res = a.mul(&b).max_abs_diff(&b.mul(&a));
        assert!(res < 1e-13, "commutator {res}");
    }

    #[test]
    fn evaluate_is_multiplicative() {
        let mut rng = SplitMix64::new(8);
        let bundle = ModelBundle::new(2, CMatrix::random(8, &mut rng), None, None).unwrap();
        let w1 = OpWord(vec![s_123()]);
        let w2 = OpWord(vec![
            OpLetter::q(label(1, 4), label(2, 3)).unwrap(),
            OpLetter::s(label(1, 2), label(1, 4), label(2, 4)).unwrap(),
        ]);
        let mut cat = w1.letters().to_vec();
        cat.extend(w2.letters().to_vec());
        let joined = evaluate(&OpWord(cat), &bundle).unwrap();
        let split = evaluate(&w1, &bundle).unwrap().mul(&evaluate(&w2, &bundle).unwrap());
        assert!(joined.max_abs_diff(&split) < 1e-13);
    }

    #[test]
    fn empty_word_evaluates_to_identity() {
        let bundle = ModelBundle::identity(2).unwrap();
        let e = evaluate(&OpWord(vec![]), &bundle).unwrap();
        assert_eq!(e, CMatrix::identity(64));
    }

    #[test]
    fn stilde_construction_inverts_the_s_letter() {
        let mut rng = SplitMix64::new(12);
        for _ in 0..3 {
            let s = CMatrix::random(8, &mut rng);
            let stilde = stilde_from_unitarity(&s, 2).unwrap();
            let bundle = ModelBundle::new(2, s, Some(stilde), None).unwrap();
            let basis = GlobalSpaceBasis::new();
            let s_emb = embed_letter(&s_123(), &bundle, &basis).unwrap();
            let st_letter =
                OpLetter::stilde(label(2, 3), label(1, 3), label(1, 2)).unwrap();
            let st_emb = embed_letter(&st_letter, &bundle, &basis).unwrap();
            let res = st_emb.mul(&s_emb).max_abs_diff(&CMatrix::identity(64));
            assert!(res < 1e-12, "unitarity residual {res}");
        }
    }

    #[test]
    fn stilde_construction_is_an_involution() {
        let mut rng = SplitMix64::new(13);
        let s = CMatrix::random(8, &mut rng);
        let back = stilde_from_unitarity(&stilde_from_unitarity(&s, 2).unwrap(), 2).unwrap();
        assert!(back.max_abs_diff(&s) < 1e-12);
    }

    #[test]
    fn identity_stilde_is_identity() {
        let st = stilde_from_unitarity(&CMatrix::identity(8), 2).unwrap();
        assert_eq!(st, CMatrix::identity(8));
    }

    #[test]
    fn unnormalized_label_rejected() {
        let bundle = ModelBundle::identity(2).unwrap();
        let basis = GlobalSpaceBasis::new();
        let letter = OpLetter::s(label(4, 2), label(4, 3), label(2, 3)).unwrap();
        assert!(matches!(
            embed_letter(&letter, &bundle, &basis),
            Err(TensorError::LabelOutsideBasis(_))
        ));
    }

    #[test]
    fn dimension_guard() {
        assert!(matches!(
            ModelBundle::identity(5),
            Err(TensorError::DimensionGuard(5, _))
        ));
    }
}
