//! Homogeneous quadratic algebras: duality, graded components, normal-form
//! multiplication and Hilbert series.

use crate::linalg::{annihilator, Matrix, Subspace};
use crate::scalar::{Field, Scalar};
use crate::tensor::homogeneous_ideal_component;
use crate::{Error, Result};

/// A quadratic algebra: generators V of degree 1 and a canonical relation
/// subspace I inside V (x) V.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticAlgebra {
    pub field: Field,
    pub gen_names: Vec<String>,
    pub relations: Subspace,
}

impl QuadraticAlgebra {
    pub fn new(field: Field, gen_names: Vec<String>, relations: Subspace) -> Result<Self> {
        let d = gen_names.len();
        if relations.ambient != d * d {
            return Err(Error::AmbientMismatch {
                left: relations.ambient,
                right: d * d,
            });
        }
        Ok(QuadraticAlgebra {
            field,
            gen_names,
            relations,
        })
    }

    pub fn gen_dim(&self) -> usize {
        self.gen_names.len()
    }

    /// The quadratic dual: generators V*, relations I^perp under the pairing
    /// <v* (x) w*, v (x) w> = v*(v) w*(w).
    pub fn quadratic_dual(&self) -> QuadraticAlgebra {
        let names = self
            .gen_names
            .iter()
            .map(|n| match n.strip_suffix('*') {
                Some(base) => base.to_string(),
                None => format!("{n}*"),
            })
            .collect();
        QuadraticAlgebra {
            field: self.field,
            gen_names: names,
            relations: annihilator(&self.relations),
        }
    }

    /// Graded components with normal forms and projections up to degree `n`.
    pub fn components(&self, n: usize) -> Components {
        let d = self.gen_dim();
        let field = self.field;
        let mut comps: Vec<GradedComponent> = Vec::with_capacity(n + 1);
        // K_m = intersection of all shifts W^a (x) R (x) W^b with R = I^perp;
        // its reversed-order reduction yields the normal-form words and the
        // projection functionals in one matrix.
        let mut k_prev = Matrix::identity(field, 1);
        for m in 0..=n {
            let k = match m {
                0 => Matrix::identity(field, 1),
                1 => Matrix::identity(field, d),
                2 => annihilator(&self.relations).basis,
                _ => next_dual_component(&self.relations, &k_prev, d),
            };
            let (proj, words) = reduce_rightmost(&k);
            comps.push(GradedComponent {
                degree: m,
                words,
                proj,
            });
            k_prev = comps.last().unwrap().proj.clone();
        }
        Components {
            gen_dim: d,
            field,
            comps,
        }
    }

    pub fn component(&self, n: usize) -> GradedComponent {
        self.components(n).comps.swap_remove(n)
    }

    /// Component dimensions for degrees 0..=n.
    pub fn hilbert(&self, n: usize) -> Vec<usize> {
        self.components(n)
            .comps
            .iter()
            .map(|c| c.dim())
            .collect()
    }
}

/// K_m computed from K_{m-1}: span of W (x) K_{m-1} cut down by the
/// degree-(first two slots) relation constraints.
fn next_dual_component(i: &Subspace, k_prev: &Matrix, d: usize) -> Matrix {
    let field = k_prev.field;
    let kdim = k_prev.rows;
    let prev_amb = k_prev.cols;
    let tail = prev_amb / d; // d^{m-2}
    let amb = prev_amb * d;
    // Constraint: contracting the first two slots with every relation
    // functional lambda in I kills the element.
    let ncols = d * kdim;
    let mut constraint = Matrix::zero(field, i.dim() * tail, ncols);
    for (col, (gi, kj)) in (0..d)
        .flat_map(|gi| (0..kdim).map(move |kj| (gi, kj)))
        .enumerate()
    {
        for l in 0..i.dim() {
            let lambda = i.basis.row(l);
            for ip in 0..d {
                let lam = &lambda[gi * d + ip];
                if lam.is_zero() {
                    continue;
                }
                for t in 0..tail {
                    let kv = k_prev.get(kj, ip * tail + t);
                    if kv.is_zero() {
                        continue;
                    }
                    let r = l * tail + t;
                    let v = constraint.get(r, col).add(&lam.mul(kv));
                    constraint.set(r, col, v);
                }
            }
        }
    }
    let z = crate::linalg::kernel(&constraint);
    // materialize kernel vectors as tensors in W^{(x)m}
    let mut rows = Vec::with_capacity(z.dim());
    for r in 0..z.dim() {
        let coeffs = z.basis.row(r);
        let mut v = vec![field.zero(); amb];
        for (col, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (gi, kj) = (col / kdim, col % kdim);
            for t in 0..prev_amb {
                let kv = k_prev.get(kj, t);
                if kv.is_zero() {
                    continue;
                }
                v[gi * prev_amb + t] = v[gi * prev_amb + t].add(&c.mul(kv));
            }
        }
        rows.push(v);
    }
    Matrix::from_rows(field, amb, rows)
}

/// Gauss-Jordan with columns scanned right to left. The pivot columns are
/// exactly the non-pivot (normal form) words of the primal ideal component,
/// and the resulting rows are the projection functionals onto those words.
fn reduce_rightmost(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut w = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in (0..w.cols).rev() {
        let mut sel = None;
        for i in r..w.rows {
            if !w.get(i, c).is_zero() {
                sel = Some(i);
                break;
            }
        }
        let Some(i) = sel else { continue };
        for j in 0..w.cols {
            let a = w.get(r, j).clone();
            let b = w.get(i, j).clone();
            w.set(r, j, b);
            w.set(i, j, a);
        }
        let inv = w.get(r, c).inv().expect("nonzero pivot");
        if !inv.is_one() {
            for j in 0..w.cols {
                let v = w.get(r, j).mul(&inv);
                w.set(r, j, v);
            }
        }
        for i in 0..w.rows {
            if i == r || w.get(i, c).is_zero() {
                continue;
            }
            let f = w.get(i, c).clone();
            for j in 0..w.cols {
                if w.get(r, j).is_zero() {
                    continue;
                }
                let v = w.get(i, j).sub(&f.mul(w.get(r, j)));
                w.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
        if r == w.rows {
            break;
        }
    }
    w.drop_zero_rows();
    // sort rows by ascending pivot word
    let mut order: Vec<usize> = (0..pivots.len()).collect();
    order.sort_by_key(|&i| pivots[i]);
    let sorted = Matrix::from_rows(
        w.field,
        w.cols,
        order.iter().map(|&i| w.row_vec(i)).collect(),
    );
    let mut words: Vec<usize> = pivots.clone();
    words.sort_unstable();
    (sorted, words)
}

/// One graded component A_n: its normal-form basis words and the projection
/// V^{(x)n} -> A_n in those coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedComponent {
    pub degree: usize,
    /// Lex indices of the normal-form words.
    pub words: Vec<usize>,
    /// dim x gen_dim^degree projection matrix; also a basis of A_n^*.
    pub proj: Matrix,
}

impl GradedComponent {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// Projects a sparse tensor (word index, coefficient) to component
    /// coordinates.
    pub fn project_sparse(&self, tensor: &[(usize, Scalar)]) -> Vec<Scalar> {
        let field = self.proj.field;
        let mut out = vec![field.zero(); self.dim()];
        for (idx, c) in tensor {
            if c.is_zero() {
                continue;
            }
            for r in 0..self.dim() {
                let p = self.proj.get(r, *idx);
                if p.is_zero() {
                    continue;
                }
                out[r] = out[r].add(&p.mul(c));
            }
        }
        out
    }
}

/// Components of a quadratic algebra computed up to a degree bound, with
/// normal-form multiplication.
#[derive(Debug, Clone)]
pub struct Components {
    pub gen_dim: usize,
    pub field: Field,
    pub comps: Vec<GradedComponent>,
}

impl Components {
    pub fn max_degree(&self) -> usize {
        self.comps.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.comps[n].dim()
    }

    pub fn get(&self, n: usize) -> &GradedComponent {
        &self.comps[n]
    }

    /// Normal-form product A_m x A_n -> A_{m+n}.
    pub fn multiply(&self, m: usize, x: &[Scalar], n: usize, y: &[Scalar]) -> Vec<Scalar> {
        assert!(m + n <= self.max_degree(), "product degree out of window");
        let dn = self.gen_dim.pow(n as u32);
        let cm = &self.comps[m];
        let cn = &self.comps[n];
        let mut tensor: Vec<(usize, Scalar)> = Vec::new();
        for (xi, xv) in x.iter().enumerate() {
            if xv.is_zero() {
                continue;
            }
            for (yi, yv) in y.iter().enumerate() {
                if yv.is_zero() {
                    continue;
                }
                tensor.push((cm.words[xi] * dn + cn.words[yi], xv.mul(yv)));
            }
        }
        self.comps[m + n].project_sparse(&tensor)
    }

    /// Coordinates of the unit in A_0.
    pub fn one(&self) -> Vec<Scalar> {
        vec![self.field.one()]
    }
}

/// Cross-check: the normal-form words match the non-pivot words of the
/// primal ideal component. Exposed for tests.
pub fn normal_words_via_ideal(a: &QuadraticAlgebra, n: usize) -> Vec<usize> {
    let u = homogeneous_ideal_component(&a.relations, a.gen_dim(), n);
    let (_, pivots) = crate::linalg::row_reduce(&u.basis);
    let amb = a.gen_dim().pow(n as u32);
    let mut piv = vec![false; amb];
    for p in pivots {
        piv[p] = true;
    }
    (0..amb).filter(|&w| !piv[w]).collect()
}
