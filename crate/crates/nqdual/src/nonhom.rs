//! Nonhomogeneous quadratic presentations (weak QLS/QL data): the relation
//! graph J2, ideal saturation at bounded degree, filtration dimensions and
//! complement changes.

use crate::linalg::{Matrix, Subspace};
use crate::linalg_sparse::{Echelon, SparseVec};
use crate::quadratic::QuadraticAlgebra;
use crate::scalar::{Field, Scalar};
use crate::tensor::{filtered_dim, FilteredTensorBasis};
use crate::{Error, Result};

/// A nonhomogeneous quadratic presentation: relations p + phi(p) + h_c(p) = 0
/// for p running over the canonical basis of I. The relation subspace
/// J2 = {p + phi(p) + h_c(p)} is the graph of (h_c, phi) on I, so it always
/// has dim I and meets k + V trivially.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NQPresentation {
    pub field: Field,
    pub gen_names: Vec<String>,
    /// Quadratic part I, canonical subspace of V (x) V.
    pub quad: Subspace,
    /// Row r = phi(p_r) in V coordinates, for the canonical basis row p_r of I.
    pub phi: Matrix,
    /// h_c(p_r) per canonical basis row.
    pub h_c: Vec<Scalar>,
    /// Optional augmentation values on the generators.
    pub augmentation: Option<Vec<Scalar>>,
}

/// One raw input relation: quadratic + linear + scalar parts, asserted = 0.
#[derive(Debug, Clone)]
pub struct RawRelation {
    pub quad: Vec<Scalar>,
    pub lin: Vec<Scalar>,
    pub scalar: Scalar,
}

impl NQPresentation {
    /// Builds a presentation from raw relations, canonicalizing the quadratic
    /// parts by row reduction pivoting only on the quadratic block (so the
    /// linear and scalar parts follow the same row operations).
    pub fn from_relations(
        field: Field,
        gen_names: Vec<String>,
        relations: Vec<RawRelation>,
        augmentation: Option<Vec<Scalar>>,
    ) -> Result<Self> {
        let d = gen_names.len();
        let mut combined = Matrix::zero(field, 0, d * d + d + 1);
        for r in &relations {
            if r.quad.len() != d * d || r.lin.len() != d {
                return Err(Error::DimensionMismatch(
                    "relation coordinate blocks do not match generator count".into(),
                ));
            }
            let mut row = r.quad.clone();
            row.extend(r.lin.iter().cloned());
            row.push(r.scalar.clone());
            combined.push_row(row);
        }
        let pivots = row_reduce_restricted(&mut combined, d * d);
        combined.drop_zero_rows();
        if combined.rows != relations.len() {
            return Err(Error::InvalidInput(
                "duplicate relations: quadratic parts are linearly dependent".into(),
            ));
        }
        if pivots.len() != combined.rows {
            return Err(Error::DegenerateGraph(
                "a combination of relations has zero quadratic part (element of k + V in J2)"
                    .into(),
            ));
        }
        let quad = Subspace {
            ambient: d * d,
            basis: Matrix::from_fn(field, combined.rows, d * d, |i, j| combined.get(i, j).clone()),
        };
        // relation reads p + phi(p) + h_c(p) = 0, so the stored parts are
        // exactly the linear/scalar blocks
        let phi = Matrix::from_fn(field, combined.rows, d, |i, j| {
            combined.get(i, d * d + j).clone()
        });
        let h_c = (0..combined.rows)
            .map(|i| combined.get(i, d * d + d).clone())
            .collect();
        let p = NQPresentation {
            field,
            gen_names,
            quad,
            phi,
            h_c,
            augmentation,
        };
        p.validate_augmentation()?;
        Ok(p)
    }

    pub fn gen_dim(&self) -> usize {
        self.gen_names.len()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.phi.is_zero() && self.h_c.iter().all(Scalar::is_zero)
    }

    /// The underlying quadratic algebra A^(0) on the same generators with
    /// relations I.
    pub fn underlying_quadratic(&self) -> QuadraticAlgebra {
        QuadraticAlgebra {
            field: self.field,
            gen_names: self.gen_names.clone(),
            relations: self.quad.clone(),
        }
    }

    /// Checks that the augmentation, when present, extends to a ring map
    /// killing every relation.
    pub fn validate_augmentation(&self) -> Result<()> {
        let Some(eps) = &self.augmentation else {
            return Ok(());
        };
        let d = self.gen_dim();
        if eps.len() != d {
            return Err(Error::BadAugmentation(
                "augmentation must assign a value to every generator".into(),
            ));
        }
        for r in 0..self.quad.dim() {
            let p = self.quad.basis.row(r);
            let mut acc = self.h_c[r].clone();
            for j in 0..d {
                acc = acc.add(&self.phi.get(r, j).mul(&eps[j]));
            }
            for i in 0..d {
                for j in 0..d {
                    acc = acc.add(&p[i * d + j].mul(&eps[i]).mul(&eps[j]));
                }
            }
            if !acc.is_zero() {
                return Err(Error::BadAugmentation(format!(
                    "relation {r} does not vanish under the augmentation"
                )));
            }
        }
        Ok(())
    }

    /// J2 as a canonical subspace of T_2(V) (filtered coordinates, ascending
    /// degree blocks).
    pub fn j2_subspace(&self) -> Subspace {
        let d = self.gen_dim();
        let amb = 1 + d + d * d;
        let mut rows = Vec::new();
        for r in 0..self.quad.dim() {
            let mut v = vec![self.field.zero(); amb];
            v[0] = self.h_c[r].clone();
            for j in 0..d {
                v[1 + j] = self.phi.get(r, j).clone();
            }
            for c in 0..d * d {
                v[1 + d + c] = self.quad.basis.get(r, c).clone();
            }
            rows.push(v);
        }
        Subspace::from_spanning(&Matrix::from_rows(self.field, amb, rows))
    }

    /// Approximates J intersected with T_n(V) by spanning x.q.y over words
    /// x, y with filtered degree at most n + slack, and intersecting with
    /// T_n. Returns the subspace at the full slack plus a stabilization flag
    /// (the last two slack increments left every dimension unchanged).
    pub fn saturate(&self, n: usize, slack: usize) -> (Subspace, bool) {
        let mut dims = Vec::with_capacity(slack + 1);
        let mut last = None;
        for s in 0..=slack {
            let sub = self.saturation_at(n, s);
            dims.push(sub.dim());
            last = Some(sub);
        }
        let stabilized = if self.is_homogeneous() {
            true
        } else if slack >= 2 {
            let k = dims.len();
            dims[k - 1] == dims[k - 2] && dims[k - 2] == dims[k - 3]
        } else if slack == 1 {
            dims[1] == dims[0]
        } else {
            false
        };
        (last.unwrap(), stabilized)
    }

    /// Span of x.q.y for q in the J2 basis and words x, y with
    /// a + 2 + b <= n + s, intersected with T_n. Columns are remapped so the
    /// degree blocks above n come first; the echelon rows supported on the
    /// trailing block then span the intersection.
    fn saturation_at(&self, n: usize, s: usize) -> Subspace {
        let d = self.gen_dim();
        let field = self.field;
        let bound = n + s;
        let low = filtered_dim(d, n as isize);
        let total = filtered_dim(d, bound as isize);
        let high = total - low;
        // remap: degree t > n block start (descending degree order)
        let high_offset = |deg: usize| -> usize {
            // sum of block sizes for degrees strictly above `deg`, up to bound
            ((deg + 1)..=bound).map(|t| d.pow(t as u32)).sum()
        };
        let fbn = FilteredTensorBasis { gen_dim: d, bound: n };
        let remap = |deg: usize, inblock: usize| -> usize {
            if deg <= n {
                high + fbn.block_offset(deg) + inblock
            } else {
                high_offset(deg) + inblock
            }
        };
        // J2 rows as (degree, inblock, coeff) triples
        let mut j2 = Vec::new();
        for r in 0..self.quad.dim() {
            let mut parts = Vec::new();
            if !self.h_c[r].is_zero() {
                parts.push((0usize, 0usize, self.h_c[r].clone()));
            }
            for j in 0..d {
                let c = self.phi.get(r, j);
                if !c.is_zero() {
                    parts.push((1, j, c.clone()));
                }
            }
            for c in 0..d * d {
                let v = self.quad.basis.get(r, c);
                if !v.is_zero() {
                    parts.push((2, c, v.clone()));
                }
            }
            j2.push(parts);
        }
        let mut ech = Echelon::new(field);
        if bound >= 2 {
            for a in 0..=(bound - 2) {
                for b in 0..=(bound - 2 - a) {
                    let db = d.pow(b as u32);
                    for q in &j2 {
                        for x in 0..d.pow(a as u32) {
                            for y in 0..db {
                                let mut row: SparseVec = q
                                    .iter()
                                    .map(|(t, w, c)| {
                                        let idx = (x * d.pow(*t as u32) + w) * db + y;
                                        (remap(a + t + b, idx), c.clone())
                                    })
                                    .collect();
                                row.sort_by_key(|e| e.0);
                                ech.insert(row);
                            }
                        }
                    }
                }
            }
        }
        // rows fully supported on the trailing T_n block
        let mut rows = Vec::new();
        for r in ech.rows_supported_from(high) {
            let mut v = vec![field.zero(); low];
            for (c, val) in r {
                v[c - high] = val.clone();
            }
            rows.push(v);
        }
        Subspace::from_spanning(&Matrix::from_rows(field, low, rows))
    }

    /// Filtration dimensions dim F_n = dim T_n - dim (J cap T_n) and their
    /// first differences, per degree up to N.
    pub fn filtration_dims(&self, max_degree: usize, slack: usize) -> FiltrationReport {
        let d = self.gen_dim();
        let mut f_dims = Vec::with_capacity(max_degree + 1);
        let mut stabilized = Vec::with_capacity(max_degree + 1);
        for n in 0..=max_degree {
            let (sub, st) = self.saturate(n, slack);
            f_dims.push(filtered_dim(d, n as isize) - sub.dim());
            stabilized.push(st);
        }
        let mut gr_dims = Vec::with_capacity(max_degree + 1);
        for n in 0..=max_degree {
            let prev = if n == 0 { 0 } else { f_dims[n - 1] };
            gr_dims.push(f_dims[n].saturating_sub(prev));
        }
        FiltrationReport {
            max_degree,
            slack,
            f_dims,
            gr_dims,
            stabilized,
        }
    }

    /// Compares Gr dimensions against the components of the underlying
    /// quadratic algebra; PBW status is agreement at every checked degree.
    pub fn weak_qls_check(&self, max_degree: usize, slack: usize) -> WeakQlsReport {
        let report = self.filtration_dims(max_degree, slack);
        let quad_dims = self.underlying_quadratic().hilbert(max_degree);
        let per_degree: Vec<DegreeVerdict> = (0..=max_degree)
            .map(|n| DegreeVerdict {
                degree: n,
                gr_dim: report.gr_dims[n],
                quadratic_dim: quad_dims[n],
                matches: report.gr_dims[n] == quad_dims[n],
            })
            .collect();
        let pbw = per_degree.iter().all(|v| v.matches);
        WeakQlsReport {
            filtration: report,
            per_degree,
            pbw,
        }
    }

    /// Moves to the complement V' = {v + alpha(v)}: phi' = phi - a1 - a2 and
    /// h' = h - alpha . phi + (alpha (x) alpha)|_I. The presented algebra is
    /// unchanged; in fixed tensor coordinates the ideal moves by the filtered
    /// automorphism v -> v + alpha(v), so filtration dimensions are invariant.
    pub fn change_complement(&self, alpha: &[Scalar]) -> NQPresentation {
        let d = self.gen_dim();
        assert_eq!(alpha.len(), d, "alpha must be a functional on V");
        let mut phi = self.phi.clone();
        let mut h_c = self.h_c.clone();
        for r in 0..self.quad.dim() {
            let p = self.quad.basis.row(r).to_vec();
            // alpha applied to first/second slot
            for j in 0..d {
                let mut a1 = self.field.zero();
                let mut a2 = self.field.zero();
                for i in 0..d {
                    a1 = a1.add(&alpha[i].mul(&p[i * d + j]));
                    a2 = a2.add(&alpha[i].mul(&p[j * d + i]));
                }
                let v = phi.get(r, j).sub(&a1).sub(&a2);
                phi.set(r, j, v);
            }
            let mut shift = self.field.zero();
            for j in 0..d {
                shift = shift.add(&alpha[j].mul(self.phi.get(r, j)));
            }
            let mut quad_term = self.field.zero();
            for i in 0..d {
                for j in 0..d {
                    quad_term = quad_term.add(&alpha[i].mul(&alpha[j]).mul(&p[i * d + j]));
                }
            }
            h_c[r] = h_c[r].sub(&shift).add(&quad_term);
        }
        NQPresentation {
            field: self.field,
            gen_names: self.gen_names.clone(),
            quad: self.quad.clone(),
            phi,
            h_c,
            augmentation: None,
        }
    }

    /// For an augmented (QL) presentation, shifts the complement so the
    /// scalar parts vanish.
    pub fn augmented_shift(&self) -> Result<NQPresentation> {
        let eps = self
            .augmentation
            .as_ref()
            .ok_or_else(|| Error::BadAugmentation("no augmentation supplied".into()))?;
        self.validate_augmentation()?;
        let alpha: Vec<Scalar> = eps.iter().map(Scalar::neg).collect();
        Ok(self.change_complement(&alpha))
    }
}

/// Row reduction that only pivots on the first `pivot_cols` columns; trailing
/// columns follow the row operations passively.
fn row_reduce_restricted(m: &mut Matrix, pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        let mut sel = None;
        for i in r..m.rows {
            if !m.get(i, c).is_zero() {
                sel = Some(i);
                break;
            }
        }
        let Some(i) = sel else { continue };
        if i != r {
            for j in 0..m.cols {
                let a = m.get(r, j).clone();
                let b = m.get(i, j).clone();
                m.set(r, j, b);
                m.set(i, j, a);
            }
        }
        let inv = m.get(r, c).inv().expect("nonzero pivot");
        if !inv.is_one() {
            for j in 0..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
        }
        for i in 0..m.rows {
            if i == r || m.get(i, c).is_zero() {
                continue;
            }
            let f = m.get(i, c).clone();
            for j in 0..m.cols {
                if m.get(r, j).is_zero() {
                    continue;
                }
                let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.rows {
            break;
        }
    }
    pivots
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationReport {
    pub max_degree: usize,
    pub slack: usize,
    pub f_dims: Vec<usize>,
    pub gr_dims: Vec<usize>,
    pub stabilized: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeVerdict {
    pub degree: usize,
    pub gr_dim: usize,
    pub quadratic_dim: usize,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakQlsReport {
    pub filtration: FiltrationReport,
    pub per_degree: Vec<DegreeVerdict>,
    pub pbw: bool,
}

impl WeakQlsReport {
    /// First degree where Gr fails to be quadratic, if any.
    pub fn failure_degree(&self) -> Option<usize> {
        self.per_degree.iter().find(|v| !v.matches).map(|v| v.degree)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::corpus;
    use crate::scalar::Field;

    fn q(n: i64) -> Scalar {
        Field::Rational.from_i64(n)
    }

    /// The paper's counterexample: xy = x + y, x^2 + yz = z.
    pub(crate) fn counterexample() -> NQPresentation {
        let f = Field::Rational;
        let names = vec!["x".into(), "y".into(), "z".into()];
        let d = 3;
        let mut rel1 = RawRelation {
            quad: vec![f.zero(); d * d],
            lin: vec![q(-1), q(-1), q(0)],
            scalar: q(0),
        };
        rel1.quad[0 * d + 1] = q(1); // x(x)y
        let mut rel2 = RawRelation {
            quad: vec![f.zero(); d * d],
            lin: vec![q(0), q(0), q(-1)],
            scalar: q(0),
        };
        rel2.quad[0 * d + 0] = q(1); // x(x)x
        rel2.quad[1 * d + 2] = q(1); // y(x)z
        NQPresentation::from_relations(f, names, vec![rel1, rel2], None).unwrap()
    }

    #[test]
    fn j2_graph_examples() {
        let p = counterexample();
        let j2 = p.j2_subspace();
        assert_eq!(j2.dim(), 2);
        // J2 contains xy - x - y as a filtered vector
        let d = 3;
        let mut v = vec![q(0); 1 + d + d * d];
        v[1] = q(-1);
        v[2] = q(-1);
        v[1 + d + 1] = q(1);
        assert!(j2.contains(&v));
        // homogeneous embedding when phi = h = 0
        let hom = NQPresentation {
            phi: Matrix::zero(Field::Rational, p.quad.dim(), 3),
            h_c: vec![q(0), q(0)],
            augmentation: None,
            ..p.clone()
        };
        let j2h = hom.j2_subspace();
        for r in 0..j2h.dim() {
            assert!(j2h.basis.row(r)[..4].iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn degenerate_graph_rejected() {
        let f = Field::Rational;
        let names = vec!["x".into(), "y".into()];
        // two relations with proportional quadratic parts but different tails
        let mk = |lin0: i64| {
            let mut quad = vec![f.zero(); 4];
            quad[1] = q(1);
            RawRelation {
                quad,
                lin: vec![q(lin0), q(0)],
                scalar: q(0),
            }
        };
        let err = NQPresentation::from_relations(f, names, vec![mk(0), mk(1)], None);
        assert!(matches!(err, Err(Error::DegenerateGraph(_))));
    }

    #[test]
    fn homogeneous_saturation_matches_ideal_component() {
        let f = Field::Rational;
        // commutation relations of S(V), dim 2, as a homogeneous presentation
        let mut quad = vec![f.zero(); 4];
        quad[1] = q(1);
        quad[2] = q(-1);
        let p = NQPresentation::from_relations(
            f,
            vec!["x".into(), "y".into()],
            vec![RawRelation {
                quad,
                lin: vec![q(0), q(0)],
                scalar: q(0),
            }],
            None,
        )
        .unwrap();
        for n in 2..=4 {
            let (sub, st) = p.saturate(n, 0);
            assert!(st);
            let ideal =
                crate::tensor::homogeneous_ideal_component(&p.quad, 2, n);
            // filtered intersection = direct sum of homogeneous pieces
            let expect: usize = (2..=n)
                .map(|t| crate::tensor::homogeneous_ideal_component(&p.quad, 2, t).dim())
                .sum();
            assert_eq!(sub.dim(), expect);
            let _ = ideal;
        }
    }

    #[test]
    fn heisenberg_filtration_dims() {
        let p = corpus::enveloping(&corpus::heisenberg3(Field::Rational)).unwrap();
        let rep = p.filtration_dims(4, 2);
        assert_eq!(rep.f_dims, vec![1, 4, 10, 20, 35]);
        assert!(rep.stabilized.iter().all(|&s| s));
        let w = p.weak_qls_check(4, 2);
        assert!(w.pbw);
    }

    #[test]
    fn heisenberg_saturation_degree_two() {
        let p = corpus::enveloping(&corpus::heisenberg3(Field::Rational)).unwrap();
        let (sub, st) = p.saturate(2, 2);
        assert_eq!(sub.dim(), 3);
        assert!(st);
    }

    #[test]
    fn counterexample_fails_pbw_at_degree_two() {
        let p = counterexample();
        // the hidden relation yz - zy (mod lower terms) enters with slack
        let (s0, _) = p.saturate(2, 0);
        let (s2, _) = p.saturate(2, 2);
        assert!(s2.dim() > s0.dim(), "saturation must pick up yz = zy");
        let w = p.weak_qls_check(2, 2);
        assert_eq!(w.failure_degree(), Some(2));
        assert!(w.filtration.gr_dims[2] < 7);
    }

    #[test]
    fn clifford_filtration() {
        let qf = corpus::QuadraticFormData::diagonal(Field::Rational, &[1, 1]);
        let p = corpus::clifford(&qf).unwrap();
        let rep = p.filtration_dims(3, 2);
        assert_eq!(rep.f_dims, vec![1, 3, 4, 4]);
    }

    #[test]
    fn change_complement_identity_and_invariance() {
        let p = corpus::enveloping(&corpus::heisenberg3(Field::Rational)).unwrap();
        let zero = vec![q(0), q(0), q(0)];
        assert_eq!(p.change_complement(&zero).phi, p.phi);
        // the new presentation describes the same algebra through the
        // splitting v -> v + alpha(v); the ideal moves by that filtered
        // automorphism, so dimensions (not the raw subspaces) are invariant
        let alpha = vec![q(1), q(-2), q(3)];
        let shifted = p.change_complement(&alpha);
        let a = p.filtration_dims(3, 2);
        let b = shifted.filtration_dims(3, 2);
        assert_eq!(a.f_dims, b.f_dims);
        assert_eq!(p.quad, shifted.quad);
    }

    #[test]
    fn augmentation_shift_kills_scalars() {
        // Clifford has no augmentation; U(g) with eps = 0 stays put.
        let p = corpus::enveloping(&corpus::heisenberg3(Field::Rational)).unwrap();
        let shifted = p.augmented_shift().unwrap();
        assert!(shifted.h_c.iter().all(Scalar::is_zero));
        // a nonzero consistent augmentation: abelian Lie algebra, eps = 0 is
        // forced on commutators; use eps on a free-ish example instead
        let f = Field::Rational;
        let mut quad = vec![f.zero(); 1];
        quad[0] = q(1);
        // single generator x with relation x(x)x - x = 0, eps(x) ... must
        // satisfy e^2 + phi e + h = 0 with phi = -1, h = 0: e in {0, 1}
        let pres = NQPresentation::from_relations(
            f,
            vec!["x".into()],
            vec![RawRelation {
                quad,
                lin: vec![q(-1)],
                scalar: q(0),
            }],
            Some(vec![q(1)]),
        )
        .unwrap();
        let shifted = pres.augmented_shift().unwrap();
        assert!(shifted.h_c.iter().all(Scalar::is_zero));
        // inconsistent augmentation rejected
        let bad = NQPresentation::from_relations(
            f,
            vec!["x".into()],
            vec![RawRelation {
                quad: vec![q(1)],
                lin: vec![q(-1)],
                scalar: q(0),
            }],
            Some(vec![q(2)]),
        );
        assert!(matches!(bad, Err(Error::BadAugmentation(_))));
    }
}
