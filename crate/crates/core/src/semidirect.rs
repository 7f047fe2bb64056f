//! The finite crystallographic model `(Z_L)^2 x| Gamma` with `Gamma` a
//! group of lattice rotations, acting on `l2((Z_L)^2)` by the
//! quasi-regular representation `U(s, g) f(t) = f(g^T (t - s))`.
//!
//! Sampling at a rotation-invariant lattice `K'` reduces to the abelian
//! translation model with one generator `U(0, g_n) varphi` per rotation.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupSequence, GroupSpec, ProductSubgroup};
use crate::model::{correlate, Domain, FunctionOnG, TranslationModel};
use crate::system::VectorSequence;

/// A `2 x 2` integer orthogonal matrix acting on torus coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rotation([[i64; 2]; 2]);

impl fmt::Debug for Rotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match *self {
            Rotation::IDENTITY => "I",
            Rotation::R90 => "R90",
            Rotation::R180 => "R180",
            Rotation::R270 => "R270",
            _ => return write!(f, "{:?}", self.0),
        };
        f.write_str(name)
    }
}

impl Rotation {
    pub const IDENTITY: Rotation = Rotation([[1, 0], [0, 1]]);
    pub const R90: Rotation = Rotation([[0, -1], [1, 0]]);
    pub const R180: Rotation = Rotation([[-1, 0], [0, -1]]);
    pub const R270: Rotation = Rotation([[0, 1], [-1, 0]]);

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.0
    }

    pub fn compose(&self, other: &Rotation) -> Rotation {
        let (a, b) = (self.0, other.0);
        let mut out = [[0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Rotation(out)
    }

    pub fn transpose(&self) -> Rotation {
        let m = self.0;
        Rotation([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    /// Torus index of `self * t`, reduced modulo the moduli.
    pub fn act(&self, torus: &GroupSpec, t: usize) -> usize {
        let c = torus.coords_of(t);
        let m = self.0;
        let x = m[0][0] * c[0] as i64 + m[0][1] * c[1] as i64;
        let y = m[1][0] * c[0] as i64 + m[1][1] * c[1] as i64;
        torus.element(&[x, y]).expect("rank-2 torus").index()
    }
}

/// The cyclic rotation groups of the square lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RotationGroup {
    C1,
    C2,
    C4,
}

impl RotationGroup {
    /// Elements in a fixed order starting with the identity.
    pub fn elements(&self) -> Vec<Rotation> {
        match self {
            RotationGroup::C1 => vec![Rotation::IDENTITY],
            RotationGroup::C2 => vec![Rotation::IDENTITY, Rotation::R180],
            RotationGroup::C4 => vec![Rotation::IDENTITY, Rotation::R90, Rotation::R180, Rotation::R270],
        }
    }

    pub fn order(&self) -> usize {
        match self {
            RotationGroup::C1 => 1,
            RotationGroup::C2 => 2,
            RotationGroup::C4 => 4,
        }
    }

    pub fn position(&self, r: &Rotation) -> Option<usize> {
        self.elements().iter().position(|e| e == r)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SemidirectModel {
    torus: GroupSpec,
    rotations: RotationGroup,
    lattice: ProductSubgroup,
    window: GroupSequence,
    varphi: GroupSequence,
}

impl SemidirectModel {
    pub fn new(
        window: GroupSequence,
        varphi: GroupSequence,
        rotations: RotationGroup,
        lattice: ProductSubgroup,
    ) -> Result<Self> {
        let torus = lattice.parent().clone();
        let m = torus.moduli();
        if m.len() != 2 || m[0] != m[1] {
            return Err(Error::InvalidGroup(format!(
                "the torus must be (Z_L)^2, got {:?}",
                torus
            )));
        }
        torus.ensure_same(window.group())?;
        torus.ensure_same(varphi.group())?;
        let s = lattice.strides();
        if s[0] != s[1] {
            return Err(Error::NonInvariantLattice(format!(
                "lattice strides {s:?} must be equal"
            )));
        }
        let model = Self {
            torus,
            rotations,
            lattice,
            window,
            varphi,
        };
        model.check_invariance()?;
        Ok(model)
    }

    fn check_invariance(&self) -> Result<()> {
        let k = self.lattice.abstract_group().order();
        let points: Vec<usize> = (0..k).map(|i| self.lattice.embed_index(i)).collect();
        for r in self.rotations.elements() {
            for &p in &points {
                let image = r.act(&self.torus, p);
                if self.lattice.decompose_index(image).0 != 0 {
                    return Err(Error::NonInvariantLattice(format!(
                        "{r:?} maps {:?} outside the lattice",
                        self.torus.coords_of(p)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn torus(&self) -> &GroupSpec {
        &self.torus
    }

    pub fn rotations(&self) -> RotationGroup {
        self.rotations
    }

    pub fn lattice(&self) -> &ProductSubgroup {
        &self.lattice
    }

    pub fn window(&self) -> &GroupSequence {
        &self.window
    }

    pub fn varphi(&self) -> &GroupSequence {
        &self.varphi
    }

    pub fn domain(&self) -> Domain {
        Domain::Motion {
            torus: self.torus.clone(),
            rotations: self.rotations,
        }
    }

    /// `U(s, g) f (t) = f(g^T (t - s))`.
    pub fn quasi_regular_apply(&self, s: usize, g: Rotation, f: &GroupSequence) -> Result<GroupSequence> {
        if self.rotations.position(&g).is_none() {
            return Err(Error::UnknownRotation(g.matrix()));
        }
        self.torus.ensure_same(f.group())?;
        let gt = g.transpose();
        Ok(GroupSequence::from_fn(self.torus.clone(), |t| {
            f.at(gt.act(&self.torus, self.torus.sub_indices(t, s)))
        }))
    }

    /// `(s1, g1)(s2, g2) = (s1 + g1 s2, g1 g2)`.
    pub fn compose(&self, a: (usize, Rotation), b: (usize, Rotation)) -> (usize, Rotation) {
        let s = self.torus.add_indices(a.0, a.1.act(&self.torus, b.0));
        (s, a.1.compose(&b.1))
    }

    /// Generators `phi_n = U(0, g_n) varphi`, one per rotation.
    pub fn generators(&self) -> Vec<GroupSequence> {
        self.rotations
            .elements()
            .into_iter()
            .map(|g| self.quasi_regular_apply(0, g, &self.varphi).expect("g is in the group"))
            .collect()
    }

    /// The abelian translation model over the lattice with `|Gamma|` generators.
    pub fn reduce(&self) -> Result<TranslationModel> {
        TranslationModel::new(self.window.clone(), self.lattice.clone(), self.generators())
    }

    /// Splits coefficients `x(k, g_n)` on `K' x| Gamma`, stored with index
    /// `k * |Gamma| + n`, into the sequences `x_n(k)`.
    pub fn regroup(&self, x: &[Complex64]) -> Result<VectorSequence> {
        let k = self.lattice.abstract_group().clone();
        let n = self.rotations.order();
        if x.len() != k.order() * n {
            return Err(Error::Dimension(format!(
                "{} coefficients for a group of order {}",
                x.len(),
                k.order() * n
            )));
        }
        let components = (0..n)
            .map(|j| GroupSequence::from_fn(k.clone(), |i| x[i * n + j]))
            .collect();
        VectorSequence::new(components)
    }

    /// Inverse of [`regroup`](Self::regroup).
    pub fn ungroup(&self, x: &VectorSequence) -> Result<Vec<Complex64>> {
        self.lattice.abstract_group().ensure_same(x.group())?;
        let n = self.rotations.order();
        if x.len() != n {
            return Err(Error::Dimension(format!("{} components, expected {n}", x.len())));
        }
        let order = x.group().order();
        Ok((0..order * n).map(|idx| x.component(idx % n).at(idx / n)).collect())
    }

    /// `f = sum_{(k, g) in K' x| Gamma} x(k, g) U(k, g) varphi`.
    pub fn synthesize_direct(&self, x: &[Complex64]) -> Result<GroupSequence> {
        let n = self.rotations.order();
        let k = self.lattice.abstract_group();
        if x.len() != k.order() * n {
            return Err(Error::Dimension("coefficient count does not match K' x| Gamma".into()));
        }
        let mut f = GroupSequence::zeros(self.torus.clone());
        for (idx, &c) in x.iter().enumerate() {
            let shift = self.lattice.embed_index(idx / n);
            let g = self.rotations.elements()[idx % n];
            let term = self.quasi_regular_apply(shift, g, &self.varphi)?;
            f.add_assign_checked(&term.scale(c))?;
        }
        Ok(f)
    }

    /// `F(s, g) = <f, U(s, g) phi>` over the whole of `torus x| Gamma`.
    pub fn analysis_transform(&self, f: &GroupSequence) -> Result<FunctionOnG> {
        self.torus.ensure_same(f.group())?;
        let mut values = Vec::with_capacity(self.torus.order() * self.rotations.order());
        for g in self.rotations.elements() {
            let rotated = self.quasi_regular_apply(0, g, &self.window)?;
            // U(s, g) phi = T_s U(0, g) phi
            values.extend_from_slice(correlate(f, &rotated)?.values());
        }
        FunctionOnG::new(self.domain(), values)
    }
}
