//! Matrix convolution systems `A * x` between `l2_N(H)` and `l2_M(H)` and
//! their per-character transfer matrices.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupSequence, GroupSpec};

pub type CMatrix = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// An element of `l2_N(H)`: `N` sequences over a common group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "VectorWire", into = "VectorWire")]
pub struct VectorSequence {
    group: GroupSpec,
    components: Vec<GroupSequence>,
}

impl VectorSequence {
    pub fn new(components: Vec<GroupSequence>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::Dimension("a vector sequence needs at least one component".into()))?;
        let group = first.group().clone();
        for c in &components {
            group.ensure_same(c.group())?;
        }
        Ok(Self { group, components })
    }

    pub fn zeros(group: GroupSpec, n: usize) -> Self {
        assert!(n >= 1, "component count must be >= 1");
        Self {
            components: vec![GroupSequence::zeros(group.clone()); n],
            group,
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[GroupSequence] {
        &self.components
    }

    pub fn component(&self, n: usize) -> &GroupSequence {
        &self.components[n]
    }

    pub fn into_components(self) -> Vec<GroupSequence> {
        self.components
    }

    /// `T_t x`, translating every component.
    pub fn translate(&self, t: usize) -> VectorSequence {
        VectorSequence {
            group: self.group.clone(),
            components: self.components.iter().map(|c| c.translate(t)).collect(),
        }
    }

    pub fn inner(&self, other: &VectorSequence) -> Result<Complex64> {
        self.check_shape(other)?;
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.inner(b))
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.components.iter().map(GroupSequence::norm_sqr).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, c: Complex64) -> VectorSequence {
        VectorSequence {
            group: self.group.clone(),
            components: self.components.iter().map(|s| s.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &VectorSequence) -> Result<VectorSequence> {
        self.check_shape(other)?;
        Ok(VectorSequence {
            group: self.group.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &VectorSequence) -> Result<VectorSequence> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// `||self - other|| / ||other||`, or the absolute error when `other` is 0.
    pub fn relative_error(&self, reference: &VectorSequence) -> Result<f64> {
        let diff = self.sub(reference)?.norm();
        let scale = reference.norm();
        Ok(if scale > 0.0 { diff / scale } else { diff })
    }

    pub fn max_abs_diff(&self, other: &VectorSequence) -> Result<f64> {
        self.check_shape(other)?;
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.max_abs_diff(b))
            .try_fold(0.0, |acc, d| d.map(|d| f64::max(acc, d)))
    }

    /// Entrywise transforms gathered as one `N`-vector per character.
    pub fn transfer(&self) -> Vec<DVector<Complex64>> {
        let hats: Vec<GroupSequence> = self.components.iter().map(GroupSequence::dft).collect();
        (0..self.group.order())
            .map(|xi| DVector::from_iterator(hats.len(), hats.iter().map(|h| h.at(xi))))
            .collect()
    }

    fn check_shape(&self, other: &VectorSequence) -> Result<()> {
        self.group.ensure_same(&other.group)?;
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "vector sequences have {} and {} components",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VectorWire {
    moduli: Vec<usize>,
    components: Vec<GroupSequence>,
}

impl TryFrom<VectorWire> for VectorSequence {
    type Error = Error;

    fn try_from(w: VectorWire) -> Result<Self> {
        let v = VectorSequence::new(w.components)?;
        if v.group.moduli() != w.moduli.as_slice() {
            return Err(Error::mismatch(&w.moduli, v.group.moduli()));
        }
        Ok(v)
    }
}

impl From<VectorSequence> for VectorWire {
    fn from(v: VectorSequence) -> Self {
        VectorWire {
            moduli: v.group.moduli().to_vec(),
            components: v.components,
        }
    }
}

/// An `M x N` matrix `A = [a_{m,n}]` of sequences over one group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixWire", into = "MatrixWire")]
pub struct SequenceMatrix {
    group: GroupSpec,
    rows: usize,
    cols: usize,
    entries: Vec<GroupSequence>,
}

impl SequenceMatrix {
    /// `entries` in row-major order.
    pub fn new(group: GroupSpec, rows: usize, cols: usize, entries: Vec<GroupSequence>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("matrix shape {rows}x{cols} must be at least 1x1")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            group.ensure_same(e.group())?;
        }
        Ok(Self {
            group,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(
        group: GroupSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> GroupSequence,
    ) -> Result<Self> {
        let entries = (0..rows)
            .flat_map(|m| (0..cols).map(move |n| (m, n)))
            .map(|(m, n)| f(m, n))
            .collect();
        Self::new(group, rows, cols, entries)
    }

    pub fn zeros(group: GroupSpec, rows: usize, cols: usize) -> Result<Self> {
        let z = GroupSequence::zeros(group.clone());
        Self::from_fn(group, rows, cols, |_, _| z.clone())
    }

    /// `a_{n,n} = delta_0`, zero elsewhere.
    pub fn identity(group: GroupSpec, n: usize) -> Result<Self> {
        let delta = GroupSequence::delta(group.clone(), 0);
        let zero = GroupSequence::zeros(group.clone());
        Self::from_fn(group, n, n, |i, j| if i == j { delta.clone() } else { zero.clone() })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, m: usize, n: usize) -> &GroupSequence {
        &self.entries[m * self.cols + n]
    }

    pub fn entries(&self) -> &[GroupSequence] {
        &self.entries
    }

    /// Column `m` as an element of `l2_rows(H)`.
    pub fn column(&self, m: usize) -> VectorSequence {
        VectorSequence {
            group: self.group.clone(),
            components: (0..self.rows).map(|r| self.entry(r, m).clone()).collect(),
        }
    }

    /// The matrix convolution: component `m` is `sum_n a_{m,n} * x_n`.
    pub fn apply(&self, x: &VectorSequence) -> Result<VectorSequence> {
        self.group.ensure_same(x.group())?;
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "system has {} inputs, vector has {} components",
                self.cols,
                x.len()
            )));
        }
        let components = (0..self.rows)
            .map(|m| {
                let mut acc = GroupSequence::zeros(self.group.clone());
                for n in 0..self.cols {
                    acc.add_assign_checked(&self.entry(m, n).convolve(x.component(n))?)?;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorSequence {
            group: self.group.clone(),
            components,
        })
    }

    /// Entrywise DFT: one `M x N` complex matrix per character.
    pub fn transfer(&self) -> TransferMatrix {
        let hats: Vec<GroupSequence> = self.entries.iter().map(GroupSequence::dft).collect();
        let per_xi = (0..self.group.order())
            .map(|xi| CMatrix::from_fn(self.rows, self.cols, |m, n| hats[m * self.cols + n].at(xi)))
            .collect();
        TransferMatrix {
            group: self.group.clone(),
            rows: self.rows,
            cols: self.cols,
            per_xi,
        }
    }

    /// Inverse of [`transfer`](Self::transfer).
    pub fn from_transfer(t: &TransferMatrix) -> SequenceMatrix {
        let g = t.group.clone();
        let entries = (0..t.rows)
            .flat_map(|m| (0..t.cols).map(move |n| (m, n)))
            .map(|(m, n)| GroupSequence::from_fn(g.clone(), |xi| t.per_xi[xi][(m, n)]).idft())
            .collect();
        SequenceMatrix {
            group: g,
            rows: t.rows,
            cols: t.cols,
            entries,
        }
    }

    /// The `N x M` system with entries `(n, m) = a_{m,n}^*`.
    pub fn adjoint(&self) -> SequenceMatrix {
        let entries = (0..self.cols)
            .flat_map(|n| (0..self.rows).map(move |m| (n, m)))
            .map(|(n, m)| self.entry(m, n).involution())
            .collect();
        SequenceMatrix {
            group: self.group.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// `self . inner`, computed per character and transformed back.
    pub fn compose(&self, inner: &SequenceMatrix) -> Result<SequenceMatrix> {
        self.group.ensure_same(&inner.group)?;
        let product = self.transfer().mul(&inner.transfer())?;
        Ok(SequenceMatrix::from_transfer(&product))
    }

    pub fn max_abs_diff(&self, other: &SequenceMatrix) -> Result<f64> {
        self.group.ensure_same(&other.group)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension("matrix shapes differ".into()));
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.max_abs_diff(b))
            .try_fold(0.0, |acc, d| d.map(|d| f64::max(acc, d)))
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|e| e.values().iter().all(|v| v.im == 0.0))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixWire {
    moduli: Vec<usize>,
    rows: usize,
    cols: usize,
    entries: Vec<GroupSequence>,
}

impl TryFrom<MatrixWire> for SequenceMatrix {
    type Error = Error;

    fn try_from(w: MatrixWire) -> Result<Self> {
        SequenceMatrix::new(GroupSpec::new(w.moduli)?, w.rows, w.cols, w.entries)
    }
}

impl From<SequenceMatrix> for MatrixWire {
    fn from(a: SequenceMatrix) -> Self {
        MatrixWire {
            moduli: a.group.moduli().to_vec(),
            rows: a.rows,
            cols: a.cols,
            entries: a.entries,
        }
    }
}

/// `A_hat(xi)` for every character `xi`, in row-major dual order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TransferWire", into = "TransferWire")]
pub struct TransferMatrix {
    group: GroupSpec,
    rows: usize,
    cols: usize,
    per_xi: Vec<CMatrix>,
}

impl TransferMatrix {
    pub fn from_fn(group: GroupSpec, rows: usize, cols: usize, mut f: impl FnMut(usize) -> CMatrix) -> Result<Self> {
        let per_xi: Vec<CMatrix> = (0..group.order()).map(&mut f).collect();
        Self::new(group, rows, cols, per_xi)
    }

    pub fn new(group: GroupSpec, rows: usize, cols: usize, per_xi: Vec<CMatrix>) -> Result<Self> {
        if per_xi.len() != group.order() {
            return Err(Error::Dimension(format!(
                "{} character matrices for a group of order {}",
                per_xi.len(),
                group.order()
            )));
        }
        if let Some(bad) = per_xi.iter().find(|m| m.shape() != (rows, cols)) {
            return Err(Error::Dimension(format!(
                "character matrix has shape {:?}, expected ({rows}, {cols})",
                bad.shape()
            )));
        }
        Ok(Self {
            group,
            rows,
            cols,
            per_xi,
        })
    }

    pub fn zeros(group: GroupSpec, rows: usize, cols: usize) -> Self {
        let per_xi = vec![CMatrix::from_element(rows, cols, ZERO); group.order()];
        Self {
            group,
            rows,
            cols,
            per_xi,
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, xi: usize) -> &CMatrix {
        &self.per_xi[xi]
    }

    pub fn iter(&self) -> impl Iterator<Item = &CMatrix> {
        self.per_xi.iter()
    }

    pub fn conj_transpose(&self) -> TransferMatrix {
        TransferMatrix {
            group: self.group.clone(),
            rows: self.cols,
            cols: self.rows,
            per_xi: self.per_xi.iter().map(|m| m.adjoint()).collect(),
        }
    }

    /// Per-character product `self(xi) rhs(xi)`.
    pub fn mul(&self, rhs: &TransferMatrix) -> Result<TransferMatrix> {
        self.group.ensure_same(&rhs.group)?;
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(TransferMatrix {
            group: self.group.clone(),
            rows: self.rows,
            cols: rhs.cols,
            per_xi: self.per_xi.iter().zip(&rhs.per_xi).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn max_abs_diff(&self, other: &TransferMatrix) -> Result<f64> {
        self.group.ensure_same(&other.group)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension("transfer shapes differ".into()));
        }
        Ok(self
            .per_xi
            .iter()
            .zip(&other.per_xi)
            .flat_map(|(a, b)| a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max))
    }
}

/// `{ "moduli", "rows", "cols", "characters": [{ "re": [...], "im": [...] }] }`
/// with each character matrix in row-major order.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransferWire {
    moduli: Vec<usize>,
    rows: usize,
    cols: usize,
    characters: Vec<MatrixEntriesWire>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixEntriesWire {
    re: Vec<f64>,
    #[serde(default)]
    im: Option<Vec<f64>>,
}

impl TryFrom<TransferWire> for TransferMatrix {
    type Error = Error;

    fn try_from(w: TransferWire) -> Result<Self> {
        let group = GroupSpec::new(w.moduli)?;
        let (rows, cols) = (w.rows, w.cols);
        let per_xi = w
            .characters
            .into_iter()
            .map(|c| {
                let im = c.im.unwrap_or_else(|| vec![0.0; c.re.len()]);
                if c.re.len() != rows * cols || im.len() != rows * cols {
                    return Err(Error::Dimension(format!(
                        "character matrix needs {} entries",
                        rows * cols
                    )));
                }
                Ok(CMatrix::from_fn(rows, cols, |i, j| {
                    Complex64::new(c.re[i * cols + j], im[i * cols + j])
                }))
            })
            .collect::<Result<Vec<_>>>()?;
        TransferMatrix::new(group, rows, cols, per_xi)
    }
}

impl From<TransferMatrix> for TransferWire {
    fn from(t: TransferMatrix) -> Self {
        let characters = t
            .per_xi
            .iter()
            .map(|m| {
                let row_major: Vec<Complex64> = (0..t.rows)
                    .flat_map(|i| (0..t.cols).map(move |j| m[(i, j)]))
                    .collect();
                MatrixEntriesWire {
                    re: row_major.iter().map(|v| v.re).collect(),
                    im: Some(row_major.iter().map(|v| v.im).collect()),
                }
            })
            .collect();
        TransferWire {
            moduli: t.group.moduli().to_vec(),
            rows: t.rows,
            cols: t.cols,
            characters,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn seq(g: &GroupSpec, v: &[f64]) -> GroupSequence {
        GroupSequence::from_real(g.clone(), v).unwrap()
    }

    #[test]
    fn identity_and_zero_inputs() {
        let g = GroupSpec::new(vec![2, 3]).unwrap();
        let id = SequenceMatrix::identity(g.clone(), 2).unwrap();
        let x = VectorSequence::new(vec![
            seq(&g, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]),
            seq(&g, &[0.0, -1.0, 0.5, 0.0, 2.0, 1.0]),
        ])
        .unwrap();
        assert_eq!(id.apply(&x).unwrap(), x);
        let zero = VectorSequence::zeros(g.clone(), 2);
        assert_eq!(id.apply(&zero).unwrap(), zero);
    }

    #[test]
    fn one_by_two_system_on_z2() {
        let z2 = GroupSpec::cyclic(2).unwrap();
        let a = SequenceMatrix::new(z2.clone(), 1, 2, vec![seq(&z2, &[1.0, 0.0]), seq(&z2, &[0.0, 1.0])]).unwrap();
        let x = VectorSequence::new(vec![seq(&z2, &[1.0, 0.0]), seq(&z2, &[1.0, 0.0])]).unwrap();
        let y = a.apply(&x).unwrap();
        assert_eq!(y.len(), 1);
        assert_eq!(y.component(0).values(), &[c(1.0), c(1.0)]);
    }

    #[test]
    fn apply_rejects_wrong_width() {
        let z2 = GroupSpec::cyclic(2).unwrap();
        let a = SequenceMatrix::identity(z2.clone(), 2).unwrap();
        let x = VectorSequence::zeros(z2, 3);
        assert!(matches!(a.apply(&x), Err(Error::Dimension(_))));
    }

    #[test]
    fn transfer_examples() {
        let g = GroupSpec::new(vec![3]).unwrap();
        let t = SequenceMatrix::identity(g.clone(), 2).unwrap().transfer();
        for m in t.iter() {
            assert_eq!(*m, CMatrix::identity(2, 2));
        }
        let z4 = GroupSpec::cyclic(4).unwrap();
        let a = SequenceMatrix::new(z4.clone(), 1, 1, vec![seq(&z4, &[1.0, 0.5, 0.0, 0.0])]).unwrap();
        let t = a.transfer();
        let expected = [(1.5, 0.0), (1.0, -0.5), (0.5, 0.0), (1.0, 0.5)];
        for (xi, (re, im)) in expected.iter().enumerate() {
            assert!((t.at(xi)[(0, 0)] - Complex64::new(*re, *im)).norm() < 1e-12);
        }
        let z = SequenceMatrix::zeros(z4, 2, 3).unwrap().transfer();
        assert!(z.iter().all(|m| m.iter().all(|v| *v == ZERO)));
    }

    #[test]
    fn adjoint_examples() {
        let z4 = GroupSpec::cyclic(4).unwrap();
        let a = SequenceMatrix::new(z4.clone(), 1, 1, vec![seq(&z4, &[1.0, 0.5, 0.0, 0.0])]).unwrap();
        assert_eq!(a.adjoint().entry(0, 0), &seq(&z4, &[1.0, 0.0, 0.0, 0.5]));
        let id = SequenceMatrix::identity(z4, 3).unwrap();
        assert_eq!(id.adjoint(), id);
    }

    #[test]
    fn compose_examples() {
        let g = GroupSpec::cyclic(3).unwrap();
        let a = SequenceMatrix::from_fn(g.clone(), 2, 2, |m, n| seq(&g, &[m as f64, n as f64, 1.0])).unwrap();
        let id = SequenceMatrix::identity(g.clone(), 2).unwrap();
        assert!(id.compose(&a).unwrap().max_abs_diff(&a).unwrap() < 1e-12);
        let zero = SequenceMatrix::zeros(g.clone(), 2, 2).unwrap();
        assert_eq!(a.compose(&zero).unwrap().max_abs_diff(&zero).unwrap(), 0.0);
        let narrow = SequenceMatrix::zeros(g, 3, 3).unwrap();
        assert!(a.compose(&narrow).is_err());
    }

    #[test]
    fn wire_forms() {
        let z2 = GroupSpec::cyclic(2).unwrap();
        let a = SequenceMatrix::new(z2.clone(), 1, 2, vec![seq(&z2, &[1.0, 0.0]), seq(&z2, &[0.0, 1.0])]).unwrap();
        let json = serde_json::to_string(&a).unwrap();
        assert!(json.starts_with(r#"{"moduli":[2],"rows":1,"cols":2,"entries":[{"moduli":[2]"#));
        assert_eq!(serde_json::from_str::<SequenceMatrix>(&json).unwrap(), a);

        let t = a.transfer();
        let back: TransferMatrix = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        assert_eq!(back, t);

        let bad = r#"{"moduli":[2],"rows":2,"cols":2,"entries":[]}"#;
        assert!(serde_json::from_str::<SequenceMatrix>(bad).is_err());
    }
}
