//! The bar complex of a curved DG-algebra: tensor tuples over the positive
//! part of B with the three differentials (multiplication, derivation,
//! curvature insertion), bar cohomology through the dual (cobar) side, the
//! degree-zero reconstruction comparison, Ext tables and the PBW check.

use std::collections::HashMap;

use crate::cdg::{reconstruct, CDGAlgebra, CdgWindow, Verdict};
use crate::linalg::Matrix;
use crate::linalg_sparse::{sparse_add_scaled, Echelon, SparseVec};
use crate::nonhom::WeakQlsReport;
use crate::quadratic::QuadraticAlgebra;
use crate::scalar::{Field, Scalar};
use crate::{Error, Result};

/// Basis of one bidegree: tuples (b_1 | ... | b_n) of normal-form basis
/// elements of positive degrees summing to m. Each entry is (degree, index).
#[derive(Debug, Clone)]
pub struct BarBasis {
    pub n: usize,
    pub m: usize,
    pub tuples: Vec<Vec<(usize, usize)>>,
    index: HashMap<Vec<(usize, usize)>, usize>,
}

impl BarBasis {
    pub fn dim(&self) -> usize {
        self.tuples.len()
    }
}

type Rows = Vec<SparseVec>;

/// All bidegrees with internal degree at most M, with the three differentials
/// stored as sparse rows (one per source basis element):
/// - `del` multiplies adjacent factors, bidegree (n, m) -> (n - 1, m);
/// - `dif` applies d to one factor, (n, m) -> (n, m + 1);
/// - `delta` inserts h in every slot, (n, m) -> (n + 1, m + 2).
#[derive(Debug, Clone)]
pub struct BarWindow {
    pub field: Field,
    pub max_internal: usize,
    pub blocks: HashMap<(usize, usize), BarBasis>,
    del: HashMap<(usize, usize), Rows>,
    dif: HashMap<(usize, usize), Rows>,
    delta: HashMap<(usize, usize), Rows>,
}

fn enumerate_tuples(dims: &[usize], n: usize, m: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut cur: Vec<(usize, usize)> = Vec::new();
    fn rec(
        dims: &[usize],
        left_n: usize,
        left_m: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if left_n == 0 {
            if left_m == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // each remaining factor uses at least degree 1
        let max_deg = left_m.saturating_sub(left_n - 1).min(dims.len() - 1);
        for deg in 1..=max_deg {
            if dims[deg] == 0 {
                continue;
            }
            for idx in 0..dims[deg] {
                cur.push((deg, idx));
                rec(dims, left_n - 1, left_m - deg, cur, out);
                cur.pop();
            }
        }
    }
    rec(dims, n, m, &mut cur, &mut out);
    out
}

fn parity_sign(exp: usize, c: &Scalar) -> Scalar {
    if exp % 2 == 1 {
        c.neg()
    } else {
        c.clone()
    }
}

/// Builds the bar window of a precomputed CDG-algebra; the component window
/// must reach the requested internal degree.
pub fn build_bar(w: &CdgWindow, max_internal: usize) -> Result<BarWindow> {
    if w.bound() < max_internal {
        return Err(Error::InvalidInput(format!(
            "component window (bound {}) too small for internal degree {max_internal}",
            w.bound()
        )));
    }
    let field = w.field();
    let dims: Vec<usize> = (0..=max_internal).map(|i| w.dim(i)).collect();
    let mut blocks = HashMap::new();
    for n in 0..=max_internal {
        for m in n..=max_internal {
            if n == 0 && m > 0 {
                continue;
            }
            let tuples = if n == 0 {
                vec![Vec::new()]
            } else {
                enumerate_tuples(&dims, n, m)
            };
            let index = tuples
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, t)| (t, i))
                .collect();
            blocks.insert((n, m), BarBasis { n, m, tuples, index });
        }
    }
    let mut del = HashMap::new();
    let mut dif = HashMap::new();
    let mut delta = HashMap::new();
    let h_entries: Vec<(usize, Scalar)> = w
        .data
        .h
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect();
    let unit = |deg: usize, idx: usize, f: Field, d: usize| -> Vec<Scalar> {
        let mut v = vec![f.zero(); d];
        let _ = deg;
        v[idx] = f.one();
        v
    };
    for ((n, m), basis) in &blocks {
        let (n, m) = (*n, *m);
        let mut del_rows: Rows = Vec::with_capacity(basis.dim());
        let mut dif_rows: Rows = Vec::with_capacity(basis.dim());
        let mut delta_rows: Rows = Vec::with_capacity(basis.dim());
        for t in &basis.tuples {
            // multiplication of adjacent factors, sign (-1)^{i_1+..+i_k+k-1}
            let mut row: SparseVec = Vec::new();
            if n >= 2 {
                let target = &blocks[&(n - 1, m)];
                let mut prefix_deg = 0;
                for k in 0..n - 1 {
                    let (a, ra) = t[k];
                    let (b, rb) = t[k + 1];
                    prefix_deg += a;
                    let exp = prefix_deg + k; // 1-based k' = k+1: +k'-1
                    let prod = w.mul(
                        a,
                        &unit(a, ra, field, dims[a]),
                        b,
                        &unit(b, rb, field, dims[b]),
                    );
                    for (pi, pc) in prod.iter().enumerate() {
                        if pc.is_zero() {
                            continue;
                        }
                        let mut nt = Vec::with_capacity(n - 1);
                        nt.extend_from_slice(&t[..k]);
                        nt.push((a + b, pi));
                        nt.extend_from_slice(&t[k + 2..]);
                        let col = target.index[&nt];
                        row.push((col, parity_sign(exp, pc)));
                    }
                }
            }
            del_rows.push(normalize_sparse(field, row));
            // derivation on one factor, sign (-1)^{i_1+..+i_{k-1}+k-1}
            let mut row: SparseVec = Vec::new();
            if m + 1 <= max_internal && n >= 1 {
                let target = &blocks[&(n, m + 1)];
                let mut prefix_deg = 0;
                for k in 0..n {
                    let (a, ra) = t[k];
                    let exp = prefix_deg + k;
                    let db = w.d_apply(a, &unit(a, ra, field, dims[a]));
                    for (pi, pc) in db.iter().enumerate() {
                        if pc.is_zero() {
                            continue;
                        }
                        let mut nt = Vec::with_capacity(n);
                        nt.extend_from_slice(&t[..k]);
                        nt.push((a + 1, pi));
                        nt.extend_from_slice(&t[k + 1..]);
                        let col = target.index[&nt];
                        row.push((col, parity_sign(exp, pc)));
                    }
                    prefix_deg += a;
                }
            }
            dif_rows.push(normalize_sparse(field, row));
            // curvature insertion in slots 1..n+1, same sign rule
            let mut row: SparseVec = Vec::new();
            if m + 2 <= max_internal {
                let target = &blocks[&(n + 1, m + 2)];
                let mut prefix_deg = 0;
                for k in 0..=n {
                    let exp = prefix_deg + k;
                    for (hi, hc) in &h_entries {
                        let mut nt = Vec::with_capacity(n + 1);
                        nt.extend_from_slice(&t[..k]);
                        nt.push((2, *hi));
                        nt.extend_from_slice(&t[k..]);
                        let col = target.index[&nt];
                        row.push((col, parity_sign(exp, hc)));
                    }
                    if k < n {
                        prefix_deg += t[k].0;
                    }
                }
            }
            delta_rows.push(normalize_sparse(field, row));
        }
        del.insert((n, m), del_rows);
        dif.insert((n, m), dif_rows);
        delta.insert((n, m), delta_rows);
    }
    Ok(BarWindow {
        field,
        max_internal,
        blocks,
        del,
        dif,
        delta,
    })
}

fn normalize_sparse(field: Field, mut row: SparseVec) -> SparseVec {
    row.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv = lv.add(&v),
            _ => out.push((c, v)),
        }
    }
    let _ = field;
    out.retain(|(_, v)| !v.is_zero());
    out
}

fn apply_rows(field: Field, rows: &Rows, v: &SparseVec) -> SparseVec {
    let mut acc: SparseVec = Vec::new();
    for (i, c) in v {
        acc = sparse_add_scaled(&acc, &rows[*i], c);
    }
    let _ = field;
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dl {
    Del,
    Dif,
    Delta,
}

impl BarWindow {
    fn rows(&self, which: Dl, bid: (usize, usize)) -> &Rows {
        match which {
            Dl::Del => &self.del[&bid],
            Dl::Dif => &self.dif[&bid],
            Dl::Delta => &self.delta[&bid],
        }
    }

    fn target(&self, which: Dl, (n, m): (usize, usize)) -> (usize, usize) {
        match which {
            Dl::Del => (n.wrapping_sub(1), m),
            Dl::Dif => (n, m + 1),
            Dl::Delta => (n + 1, m + 2),
        }
    }

    /// Checks every bidegree component of (del + dif + delta)^2 = 0 on the
    /// window interior, plus the assembled total where all terms fit.
    pub fn square_zero(&self) -> Verdict {
        let mut verdict = Verdict::pass();
        let m_max = self.max_internal;
        // components grouped by (second o first), with the interior condition
        // each pair needs on the source internal degree
        let identities: [(&str, Vec<(Dl, Dl)>, usize); 5] = [
            ("del^2", vec![(Dl::Del, Dl::Del)], 0),
            ("del dif + dif del", vec![(Dl::Del, Dl::Dif), (Dl::Dif, Dl::Del)], 1),
            (
                "dif^2 + del delta + delta del",
                vec![(Dl::Dif, Dl::Dif), (Dl::Del, Dl::Delta), (Dl::Delta, Dl::Del)],
                2,
            ),
            ("dif delta + delta dif", vec![(Dl::Dif, Dl::Delta), (Dl::Delta, Dl::Dif)], 3),
            ("delta^2", vec![(Dl::Delta, Dl::Delta)], 4),
        ];
        for (name, pairs, need) in &identities {
            for (&(n, m), basis) in &self.blocks {
                if m + *need > m_max {
                    continue;
                }
                for (i, _) in basis.tuples.iter().enumerate() {
                    let e: SparseVec = vec![(i, self.field.one())];
                    let mut acc: SparseVec = Vec::new();
                    for (second, first) in pairs {
                        let mid_bid = self.target(*first, (n, m));
                        if !self.blocks.contains_key(&mid_bid) {
                            continue;
                        }
                        let mid = apply_rows(self.field, self.rows(*first, (n, m)), &e);
                        if self.blocks.contains_key(&self.target(*second, mid_bid)) {
                            let fin = apply_rows(self.field, self.rows(*second, mid_bid), &mid);
                            acc = sparse_add_scaled(&acc, &fin, &self.field.one());
                        }
                    }
                    if !acc.is_empty() {
                        verdict.fail(format!(
                            "{name} != 0 at bidegree ({n},{m}), basis element {i}"
                        ));
                    }
                }
            }
        }
        verdict
    }

    /// Blocks of the diagonal deg_i - deg_h = k on the cobar side (homological
    /// degree at least one), ordered by ascending internal degree. Returns
    /// (n, m, offset, dim) per block.
    fn diagonal(&self, k: usize) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        let mut off = 0;
        for n in 1..=self.max_internal {
            let m = n + k;
            if m > self.max_internal {
                break;
            }
            let dim = self.blocks[&(n, m)].dim();
            out.push((n, m, off, dim));
            off += dim;
        }
        out
    }

    /// Rows of the cobar differential C^k -> C^{k-1}: transposes of the three
    /// bar differentials out of the (k-1)-diagonal. Row order follows the
    /// k-diagonal layout; k must be at least 1.
    fn cobar_rows(&self, k: usize) -> Vec<SparseVec> {
        let src_layout = self.diagonal(k);
        let tgt_layout = self.diagonal(k - 1);
        let total: usize = src_layout.iter().map(|b| b.3).sum();
        let mut rows: Vec<SparseVec> = vec![Vec::new(); total];
        let src_off: HashMap<(usize, usize), usize> =
            src_layout.iter().map(|&(n, m, o, _)| ((n, m), o)).collect();
        // bar sources on the (k-1)-diagonal; the empty tuple is excluded, so
        // the counit component of the dual differential is dropped (reduced
        // cobar convention) -- no bar differential ever lands on the empty
        // tuple, so this only removes a column, never an entry
        for &(n, m, tgt_col_base, _) in &tgt_layout {
            for which in [Dl::Del, Dl::Dif, Dl::Delta] {
                let tb = self.target(which, (n, m));
                let Some(&row_base) = src_off.get(&tb) else {
                    continue;
                };
                for (s, row) in self.rows(which, (n, m)).iter().enumerate() {
                    for (t, c) in row {
                        rows[row_base + t].push((tgt_col_base + s, c.clone()));
                    }
                }
            }
        }
        for r in &mut rows {
            r.sort_by_key(|e| e.0);
        }
        rows
    }
}

/// Filtered dimension of one truncation of a bar-cohomology group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationDim {
    pub p: usize,
    pub dim: usize,
    /// The image computation can miss contributions from beyond the window
    /// when p > M - 2.
    pub edge: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarCohomology {
    pub k: usize,
    pub max_internal: usize,
    pub dims: Vec<TruncationDim>,
}

/// Filtered dimensions of H^b_k: per internal-degree truncation p,
/// dim (ker cap F_p) - dim (im cap F_p), computed on the cobar side. The unit
/// class is adjoined for k = 0.
pub fn bar_cohomology(w: &BarWindow, k: usize) -> BarCohomology {
    let m_max = w.max_internal;
    let layout = w.diagonal(k);
    // kernel dims per truncation: insert outgoing rows block by block
    let mut ker_at = vec![0usize; m_max + 1];
    {
        let rows = if k == 0 { Vec::new() } else { w.cobar_rows(k) };
        let mut ech = Echelon::new(w.field);
        let mut row_iter = rows.into_iter();
        let mut dim_so_far = 0;
        let mut bi = 0;
        for p in 0..=m_max {
            while bi < layout.len() && layout[bi].1 <= p {
                for _ in 0..layout[bi].3 {
                    if let Some(r) = row_iter.next() {
                        ech.insert(r);
                    }
                }
                dim_so_far += layout[bi].3;
                bi += 1;
            }
            ker_at[p] = dim_so_far - ech.rank();
        }
    }
    // image dims per truncation: rows from the (k+1)-diagonal, columns
    // remapped so high internal degrees come first
    let mut im_at = vec![0usize; m_max + 1];
    {
        let total: usize = layout.iter().map(|b| b.3).sum();
        // descending-m offsets
        let mut desc_off: HashMap<(usize, usize), usize> = HashMap::new();
        let mut off = 0;
        for &(n, m, _, dim) in layout.iter().rev() {
            desc_off.insert((n, m), off);
            off += dim;
        }
        let remap: Vec<usize> = {
            let mut v = vec![0; total];
            for &(n, m, o, dim) in &layout {
                let base = desc_off[&(n, m)];
                for j in 0..dim {
                    v[o + j] = base + j;
                }
            }
            v
        };
        let mut ech = Echelon::new(w.field);
        for row in w.cobar_rows(k + 1) {
            let mut r: SparseVec = row
                .into_iter()
                .map(|(c, v)| (remap[c], v))
                .collect();
            r.sort_by_key(|e| e.0);
            ech.insert(r);
        }
        for p in 0..=m_max {
            // suffix of the descending layout = blocks with m <= p
            let start: usize = layout
                .iter()
                .filter(|b| b.1 > p)
                .map(|b| b.3)
                .sum();
            im_at[p] = ech.rows_supported_from(start).count();
        }
    }
    let unit = if k == 0 { 1 } else { 0 };
    let dims = (0..=m_max)
        .map(|p| TruncationDim {
            p,
            dim: unit + ker_at[p] - im_at[p],
            edge: p + 2 > m_max,
        })
        .collect();
    BarCohomology {
        k,
        max_internal: m_max,
        dims,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H0Report {
    pub per_degree: Vec<(usize, usize, usize, bool)>,
    pub ok: bool,
}

/// Compares the deg_i-filtered dims of H^b_0 against the filtration dims of
/// the reconstructed presentation, up to degree N. The bar window extends two
/// degrees past N so no compared entry sits on the edge.
pub fn h0_compare(psi: &CDGAlgebra, max_degree: usize, slack: usize) -> Result<H0Report> {
    let bound = (max_degree + 2).max(3);
    let w = CdgWindow::new(psi.clone(), bound)?;
    let bar = build_bar(&w, max_degree + 2)?;
    let coh = bar_cohomology(&bar, 0);
    let rec = reconstruct(psi)?;
    let filt = rec.filtration_dims(max_degree, slack);
    let mut ok = true;
    let per_degree = (0..=max_degree)
        .map(|p| {
            let b = coh.dims[p].dim;
            let f = filt.f_dims[p];
            if b != f {
                ok = false;
            }
            (p, b, f, b == f)
        })
        .collect();
    Ok(H0Report { per_degree, ok })
}

/// Ext dimensions of a quadratic algebra: table[n][m] = dim Ext^n(k,k)_m for
/// n <= m <= M, computed as bar homology with the multiplication differential
/// alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtTable {
    pub max_internal: usize,
    pub dims: Vec<Vec<usize>>,
}

pub fn ext_table(base: &QuadraticAlgebra, max_internal: usize) -> Result<ExtTable> {
    let field = base.field;
    let d = base.gen_dim();
    let psi = CDGAlgebra {
        base: base.clone(),
        d1: Matrix::zero(field, d, base.component(2).dim()),
        h: vec![field.zero(); base.component(2).dim()],
    };
    let w = CdgWindow::new(psi, max_internal.max(3))?;
    let bar = build_bar(&w, max_internal)?;
    let mut rank: HashMap<(usize, usize), usize> = HashMap::new();
    for (&bid, rows) in &bar.del {
        let mut ech = Echelon::new(field);
        for r in rows {
            ech.insert(r.clone());
        }
        rank.insert(bid, ech.rank());
    }
    let mut dims = vec![vec![0usize; max_internal + 1]; max_internal + 1];
    for n in 0..=max_internal {
        for m in n..=max_internal {
            if n == 0 && m > 0 {
                continue;
            }
            let dim = bar.blocks[&(n, m)].dim();
            let out_rank = rank.get(&(n, m)).copied().unwrap_or(0);
            let in_rank = rank.get(&(n + 1, m)).copied().unwrap_or(0);
            dims[n][m] = dim - out_rank - in_rank;
        }
    }
    Ok(ExtTable {
        max_internal,
        dims,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulReport {
    pub table: ExtTable,
    /// Ext concentrated on the diagonal n = m within the window.
    pub diagonal: bool,
    /// The weaker sufficient condition: Ext^i(k,k)_{i+1} = 0 for all i.
    pub weak_ok: bool,
}

pub fn koszul_verdict(base: &QuadraticAlgebra, max_internal: usize) -> Result<KoszulReport> {
    let table = ext_table(base, max_internal)?;
    let mut diagonal = true;
    let mut weak_ok = true;
    for n in 0..=max_internal {
        for m in n..=max_internal {
            if table.dims[n][m] == 0 {
                continue;
            }
            if m != n {
                diagonal = false;
            }
            if m == n + 1 {
                weak_ok = false;
            }
        }
    }
    Ok(KoszulReport {
        table,
        diagonal,
        weak_ok,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbwReport {
    pub weak_qls: WeakQlsReport,
    pub koszul: KoszulReport,
    pub holds: bool,
}

/// Compares Gr dims of the reconstructed presentation against the quadratic
/// dual of the base (two independent pipelines), and reports the sufficient
/// Koszulness conditions alongside.
pub fn pbw_check(psi: &CDGAlgebra, max_degree: usize, slack: usize) -> Result<PbwReport> {
    let rec = reconstruct(psi)?;
    let weak_qls = rec.weak_qls_check(max_degree, slack);
    let koszul = koszul_verdict(&psi.base, max_degree + 1)?;
    let holds = weak_qls.pbw;
    Ok(PbwReport {
        weak_qls,
        koszul,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdg::{dualize, verify_cdg};
    use crate::corpus;

    fn q(n: i64) -> Scalar {
        Field::Rational.from_i64(n)
    }

    fn window_of(p: &crate::nonhom::NQPresentation, bound: usize) -> CdgWindow {
        CdgWindow::new(dualize(p).unwrap(), bound).unwrap()
    }

    #[test]
    fn differential_formulas_on_small_tuples() {
        // Weyl dual: B = exterior on two generators, d = 0, h = curvature
        let p = corpus::weyl(Field::Rational, 1).unwrap();
        let w = window_of(&p, 4);
        assert!(verify_cdg(&w, 4).ok);
        let bar = build_bar(&w, 4).unwrap();
        // d-rows vanish, curvature insertion on the empty tuple is +(h)
        for rows in bar.dif.values() {
            assert!(rows.iter().all(|r| r.is_empty()));
        }
        let empty = &bar.delta[&(0, 0)][0];
        let target = &bar.blocks[&(1, 2)];
        let h = &w.data.h;
        let expect: SparseVec = h
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (target.index[&vec![(2, i)]], c.clone()))
            .collect();
        assert_eq!(empty, &expect);
        // two 1-factors of degree 1: del (b|b') = -(b b'), exponent i_1 = 1
        let src = &bar.blocks[&(2, 2)];
        let t = vec![(1usize, 0usize), (1usize, 1usize)]; // (x* | y*)
        let i = src.index[&t];
        let row = &bar.del[&(2, 2)][i];
        let prod = w.mul(1, &[q(1), q(0)], 1, &[q(0), q(1)]);
        let tgt = &bar.blocks[&(1, 2)];
        let expect: SparseVec = prod
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (tgt.index[&vec![(2, j)]], c.neg()))
            .collect();
        assert_eq!(row, &expect);
        // curvature insertion on (x*): slots give +(h|x*) + (x*|h)
        let src1 = &bar.blocks[&(1, 1)];
        let ix = src1.index[&vec![(1usize, 0usize)]];
        let row = &bar.delta[&(1, 1)][ix];
        let tgt = &bar.blocks[&(2, 3)];
        let mut expect: SparseVec = Vec::new();
        for (hi, hc) in h.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            // slot 1: exponent 0; slot 2: exponent i_1 + 1 = 2
            expect.push((tgt.index[&vec![(2, hi), (1, 0)]], hc.clone()));
            expect.push((tgt.index[&vec![(1, 0), (2, hi)]], hc.clone()));
        }
        expect.sort_by_key(|e| e.0);
        let mut got = row.clone();
        got.sort_by_key(|e| e.0);
        assert_eq!(got, expect);
    }

    #[test]
    fn square_zero_on_corpus_duals() {
        let cases = vec![
            corpus::weyl(Field::Rational, 1).unwrap(),
            corpus::enveloping(&corpus::heisenberg3(Field::Rational)).unwrap(),
            corpus::clifford(&corpus::QuadraticFormData::diagonal(Field::Rational, &[1, 1]))
                .unwrap(),
        ];
        for p in cases {
            let w = window_of(&p, 6);
            let bar = build_bar(&w, 6).unwrap();
            let v = bar.square_zero();
            assert!(v.ok, "{:?}", v.witnesses);
        }
    }

    #[test]
    fn broken_axioms_break_square_zero() {
        // non-Jacobi brackets give d^2 != 0, which must surface in the
        // dif^2 + del delta + delta del component -- confirms the checks are
        // not vacuous
        let f = Field::Rational;
        let mk = |i: usize, j: usize, lin: [i64; 3]| {
            let mut quad = vec![f.zero(); 9];
            quad[i * 3 + j] = q(1);
            quad[j * 3 + i] = q(-1);
            crate::nonhom::RawRelation {
                quad,
                lin: lin.iter().map(|&v| q(v)).collect(),
                scalar: q(0),
            }
        };
        let p = crate::nonhom::NQPresentation::from_relations(
            f,
            vec!["x".into(), "y".into(), "z".into()],
            vec![mk(0, 1, [0, 0, -1]), mk(1, 2, [-1, 0, 0]), mk(2, 0, [-1, 0, 0])],
            None,
        )
        .unwrap();
        let w = CdgWindow::new(dualize(&p).unwrap(), 5).unwrap();
        assert!(!verify_cdg(&w, 5).ok);
        let bar = build_bar(&w, 5).unwrap();
        assert!(!bar.square_zero().ok);
    }

    #[test]
    fn h0_matches_filtration_dims() {
        let cases = vec![
            corpus::clifford(&corpus::QuadraticFormData::diagonal(Field::Rational, &[1, 1]))
                .unwrap(),
            corpus::enveloping(&corpus::heisenberg3(Field::Rational)).unwrap(),
            corpus::weyl(Field::Rational, 1).unwrap(),
        ];
        for p in cases {
            let psi = dualize(&p).unwrap();
            let rep = h0_compare(&psi, 3, 2).unwrap();
            assert!(rep.ok, "{:?}", rep.per_degree);
        }
    }

    #[test]
    fn free_data_gives_full_tensor_dims() {
        // B^2 relations full: the dual presentation has I = 0, A = T(V)
        let f = Field::Rational;
        let b = QuadraticAlgebra {
            field: f,
            gen_names: vec!["x".into(), "y".into()],
            relations: crate::linalg::Subspace::full(f, 4),
        };
        let psi = CDGAlgebra {
            base: b,
            d1: Matrix::zero(f, 2, 0),
            h: vec![],
        };
        let rep = h0_compare(&psi, 3, 0).unwrap();
        for (p, bdim, fdim, m) in rep.per_degree {
            assert!(m);
            assert_eq!(bdim, crate::tensor::filtered_dim(2, p as isize));
            let _ = fdim;
        }
    }

    #[test]
    fn ext_of_symmetric_and_free_algebras() {
        let f = Field::Rational;
        let s2 = corpus::enveloping(&corpus::abelian(f, 2))
            .unwrap()
            .underlying_quadratic();
        let rep = koszul_verdict(&s2, 4).unwrap();
        assert!(rep.diagonal && rep.weak_ok);
        // diagonal entries are the exterior dims (1, 2, 1, 0, ...)
        assert_eq!(rep.table.dims[0][0], 1);
        assert_eq!(rep.table.dims[1][1], 2);
        assert_eq!(rep.table.dims[2][2], 1);
        assert_eq!(rep.table.dims[3][3], 0);
        // free algebra: Ext vanishes above homological degree 1
        let free = QuadraticAlgebra {
            field: f,
            gen_names: vec!["x".into(), "y".into()],
            relations: crate::linalg::Subspace::zero(f, 4),
        };
        let t = ext_table(&free, 4).unwrap();
        assert_eq!(t.dims[1][1], 2);
        for n in 2..=4 {
            for m in n..=4 {
                assert_eq!(t.dims[n][m], 0, "Ext^{n}_{m}");
            }
        }
    }

    #[test]
    fn pbw_holds_on_koszul_corpus_and_fails_on_counterexample() {
        for p in [
            corpus::enveloping(&corpus::heisenberg3(Field::Rational)).unwrap(),
            corpus::weyl(Field::Rational, 1).unwrap(),
            corpus::clifford(&corpus::QuadraticFormData::diagonal(Field::Rational, &[1, 1]))
                .unwrap(),
        ] {
            let psi = dualize(&p).unwrap();
            let rep = pbw_check(&psi, 3, 2).unwrap();
            assert!(rep.holds);
            assert!(rep.koszul.diagonal);
        }
        // homogeneous psi: trivially holds
        let s3 = corpus::enveloping(&corpus::abelian(Field::Rational, 3)).unwrap();
        let mut hom = s3.clone();
        hom.augmentation = None;
        let psi = dualize(&hom).unwrap();
        assert!(pbw_check(&psi, 3, 2).unwrap().holds);
    }

    #[test]
    fn counterexample_dual_fails_pbw() {
        let p = crate::nonhom::tests::counterexample();
        let psi = dualize(&p).unwrap();
        let w = CdgWindow::new(psi.clone(), 4).unwrap();
        assert!(verify_cdg(&w, 4).ok, "the counterexample is honest CDG data");
        let rep = pbw_check(&psi, 2, 2).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.weak_qls.failure_degree(), Some(2));
        assert!(!rep.koszul.weak_ok || !rep.koszul.diagonal);
    }

    #[test]
    fn edge_flags_follow_window() {
        let p = corpus::weyl(Field::Rational, 1).unwrap();
        let w = window_of(&p, 5);
        let bar = build_bar(&w, 5).unwrap();
        let coh = bar_cohomology(&bar, 0);
        for t in &coh.dims {
            assert_eq!(t.edge, t.p + 2 > 5);
        }
    }
}
