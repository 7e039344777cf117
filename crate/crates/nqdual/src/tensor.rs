//! Indexing for graded components of the tensor algebra T(V) and the graded
//! pieces of two-sided ideals generated in degree 2.
//!
//! Words of length n in the generator indices are enumerated
//! lexicographically, so the basis of V^{(x)n} is deterministic and
//! order-stable. The filtered basis concatenates degree blocks in ascending
//! order; filtration dimensions read off as prefix sums.

use crate::linalg::{Matrix, Subspace};
use crate::scalar::{Field, Scalar};
use crate::{Error, Result};

/// Basis of V^{(x)degree} for dim V = gen_dim: words in lex order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorBasis {
    pub gen_dim: usize,
    pub degree: usize,
}

impl TensorBasis {
    pub fn size(&self) -> usize {
        self.gen_dim.pow(self.degree as u32)
    }

    pub fn word_index(&self, word: &[usize]) -> Result<usize> {
        if word.len() != self.degree {
            return Err(Error::DimensionMismatch(format!(
                "word length {} != degree {}",
                word.len(),
                self.degree
            )));
        }
        let mut idx = 0;
        for &g in word {
            if g >= self.gen_dim {
                return Err(Error::InvalidInput(format!(
                    "generator index {g} out of range (dim {})",
                    self.gen_dim
                )));
            }
            idx = idx * self.gen_dim + g;
        }
        Ok(idx)
    }

    pub fn index_word(&self, mut idx: usize) -> Vec<usize> {
        let mut w = vec![0; self.degree];
        for k in (0..self.degree).rev() {
            w[k] = idx % self.gen_dim;
            idx /= self.gen_dim;
        }
        w
    }
}

/// Concatenated bases of degrees 0..=bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilteredTensorBasis {
    pub gen_dim: usize,
    pub bound: usize,
}

impl FilteredTensorBasis {
    /// Offset of the degree-`deg` block: 1 + d + ... + d^{deg-1}.
    pub fn block_offset(&self, deg: usize) -> usize {
        filtered_dim(self.gen_dim, deg as isize - 1)
    }

    pub fn block_size(&self, deg: usize) -> usize {
        self.gen_dim.pow(deg as u32)
    }

    pub fn size(&self) -> usize {
        filtered_dim(self.gen_dim, self.bound as isize)
    }

    /// Index of a word of any degree <= bound.
    pub fn word_index(&self, word: &[usize]) -> Result<usize> {
        if word.len() > self.bound {
            return Err(Error::DimensionMismatch(format!(
                "word degree {} exceeds bound {}",
                word.len(),
                self.bound
            )));
        }
        let tb = TensorBasis {
            gen_dim: self.gen_dim,
            degree: word.len(),
        };
        Ok(self.block_offset(word.len()) + tb.word_index(word)?)
    }

    /// Decodes a flat index into (degree, index within degree block).
    pub fn split(&self, idx: usize) -> (usize, usize) {
        let mut deg = 0;
        loop {
            let off = self.block_offset(deg);
            if idx < off + self.block_size(deg) {
                return (deg, idx - off);
            }
            deg += 1;
        }
    }
}

/// dim T_n(V) = 1 + d + ... + d^n; n = -1 gives 0.
pub fn filtered_dim(gen_dim: usize, n: isize) -> usize {
    if n < 0 {
        return 0;
    }
    (0..=n as u32).map(|k| gen_dim.pow(k)).sum()
}

/// Degree-n component of the two-sided ideal generated by I in degree 2:
/// the sum over a+2+b = n of V^{(x)a} (x) I (x) V^{(x)b}, returned as a
/// canonical subspace of V^{(x)n}. For n < 2 the zero subspace is returned.
pub fn homogeneous_ideal_component(i: &Subspace, gen_dim: usize, n: usize) -> Subspace {
    let field = i.field();
    assert_eq!(
        i.ambient,
        gen_dim * gen_dim,
        "relation subspace must live in V (x) V"
    );
    let ambient = gen_dim.pow(n as u32);
    if n < 2 {
        return Subspace::zero(field, ambient);
    }
    let mut rows = Vec::new();
    for a in 0..=(n - 2) {
        let b = n - 2 - a;
        let right_size = gen_dim.pow(b as u32);
        for r in 0..i.dim() {
            let rel = i.basis.row(r);
            for left in 0..gen_dim.pow(a as u32) {
                for right in 0..right_size {
                    let mut v = vec![field.zero(); ambient];
                    for (pair, c) in rel.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        // word = left ++ pair ++ right in lex index arithmetic
                        let idx = ((left * gen_dim * gen_dim) + pair) * right_size + right;
                        v[idx] = c.clone();
                    }
                    rows.push(v);
                }
            }
        }
    }
    Subspace::from_spanning(&Matrix::from_rows(field, ambient, rows))
}

/// Coordinates of a homogeneous element of T_m in the filtered basis of
/// bound n >= m; all other degree blocks are zero.
pub fn embed_filtered(
    element: &[Scalar],
    deg: usize,
    gen_dim: usize,
    bound: usize,
    field: Field,
) -> Result<Vec<Scalar>> {
    if deg > bound {
        return Err(Error::DimensionMismatch(format!(
            "degree {deg} exceeds bound {bound}"
        )));
    }
    let fb = FilteredTensorBasis { gen_dim, bound };
    if element.len() != fb.block_size(deg) {
        return Err(Error::DimensionMismatch(format!(
            "element has {} coordinates, expected {}",
            element.len(),
            fb.block_size(deg)
        )));
    }
    let mut out = vec![field.zero(); fb.size()];
    let off = fb.block_offset(deg);
    for (k, c) in element.iter().enumerate() {
        out[off + k] = c.clone();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::row_reduce;

    fn q(n: i64) -> Scalar {
        Field::Rational.from_i64(n)
    }

    #[test]
    fn word_indexing_lex() {
        let b = TensorBasis {
            gen_dim: 2,
            degree: 2,
        };
        // lex order 00, 01, 10, 11
        assert_eq!(b.word_index(&[0, 0]).unwrap(), 0);
        assert_eq!(b.word_index(&[1, 0]).unwrap(), 2);
        let b0 = TensorBasis {
            gen_dim: 2,
            degree: 0,
        };
        assert_eq!(b0.word_index(&[]).unwrap(), 0);
        assert!(b.word_index(&[0, 5]).is_err());
        for i in 0..4 {
            assert_eq!(b.word_index(&b.index_word(i)).unwrap(), i);
        }
    }

    #[test]
    fn filtered_layout() {
        let fb = FilteredTensorBasis {
            gen_dim: 2,
            bound: 3,
        };
        assert_eq!(fb.size(), 15);
        assert_eq!(fb.block_offset(0), 0);
        assert_eq!(fb.block_offset(1), 1);
        assert_eq!(fb.block_offset(2), 3);
        assert_eq!(fb.split(4), (2, 1));
    }

    #[test]
    fn ideal_component_trivial_cases() {
        let f = Field::Rational;
        let zero = Subspace::zero(f, 4);
        assert_eq!(homogeneous_ideal_component(&zero, 2, 3).dim(), 0);
        let full = Subspace::full(f, 4);
        assert_eq!(homogeneous_ideal_component(&full, 2, 2).dim(), 4);
    }

    #[test]
    fn commutator_ideal_degree_three() {
        // dim V = 2, I = span{xy - yx}; degree-3 part has dim 4 (8 - dim S^3)
        let f = Field::Rational;
        let mut m = Matrix::zero(f, 1, 4);
        m.set(0, 1, q(1));
        m.set(0, 2, q(-1));
        let i = Subspace::from_spanning(&m);
        assert_eq!(homogeneous_ideal_component(&i, 2, 3).dim(), 4);
        // degree-2 part is I itself
        assert_eq!(homogeneous_ideal_component(&i, 2, 2), i);
    }

    #[test]
    fn embed_filtered_blocks() {
        let f = Field::Rational;
        // scalar 1 at bound 2
        let e = embed_filtered(&[q(1)], 0, 2, 2, f).unwrap();
        assert!(e[0].is_one());
        assert!(e[1..].iter().all(Scalar::is_zero));
        // generator x at bound 1
        let e = embed_filtered(&[q(1), q(0)], 1, 2, 1, f).unwrap();
        assert!(e[1].is_one());
        // degree above bound fails
        assert!(embed_filtered(&[q(1), q(0)], 1, 2, 0, f).is_err());
    }

    #[test]
    fn rank_transpose_small() {
        let f = Field::Rational;
        let m = Matrix::from_rows(
            f,
            3,
            vec![
                vec![q(1), q(2), q(3)],
                vec![q(2), q(4), q(6)],
                vec![q(0), q(1), q(1)],
            ],
        );
        let (r, _) = row_reduce(&m);
        assert_eq!(r.rows, m.transpose().rank());
    }
}
