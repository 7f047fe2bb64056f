//! Finite abelian groups `Z_{s1} x ... x Z_{sd}`, their characters, and
//! complex sequences on them.
//!
//! Elements are addressed in mixed-radix row-major order: the last
//! coordinate varies fastest. The dual group is indexed by the same moduli,
//! so a sequence and its Fourier transform share one [`GroupSpec`].

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `exp(2 pi i num / den)`, exact at multiples of a quarter turn.
pub fn root_of_unity(num: i64, den: usize) -> Complex64 {
    let den_i = den as i64;
    let r = num.rem_euclid(den_i);
    if (4 * r) % den_i == 0 {
        return match 4 * r / den_i {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let (s, c) = (TAU * r as f64 / den as f64).sin_cos();
    Complex64::new(c, s)
}

/// The group `Z_{s1} x ... x Z_{sd}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    moduli: Arc<[usize]>,
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z{:?}", &self.moduli[..])
    }
}

impl GroupSpec {
    pub fn new(moduli: Vec<usize>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidGroup("at least one modulus is required".into()));
        }
        if let Some(bad) = moduli.iter().find(|&&s| s == 0) {
            return Err(Error::InvalidGroup(format!("modulus {bad} must be >= 1")));
        }
        moduli
            .iter()
            .try_fold(1usize, |acc, &s| acc.checked_mul(s))
            .ok_or_else(|| Error::InvalidGroup("group order overflows".into()))?;
        Ok(Self {
            moduli: moduli.into(),
        })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().product()
    }

    /// Builds an element, reducing each coordinate modulo its modulus.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::Dimension(format!(
                "element has {} coordinates, group has rank {}",
                coords.len(),
                self.rank()
            )));
        }
        let coords = coords
            .iter()
            .zip(self.moduli.iter())
            .map(|(&c, &s)| c.rem_euclid(s as i64) as usize)
            .collect();
        Ok(GroupElement {
            group: self.clone(),
            coords,
        })
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            coords: vec![0; self.rank()],
        }
    }

    /// Coordinates of the element at a row-major position.
    pub fn coords_of(&self, mut index: usize) -> Vec<usize> {
        let mut coords = vec![0; self.rank()];
        for (c, &s) in coords.iter_mut().zip(self.moduli.iter()).rev() {
            *c = index % s;
            index /= s;
        }
        coords
    }

    pub fn index_of_coords(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(self.moduli.iter())
            .fold(0, |acc, (&c, &s)| acc * s + c % s)
    }

    pub fn element_at(&self, index: usize) -> GroupElement {
        GroupElement {
            group: self.clone(),
            coords: self.coords_of(index),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    /// Row-major index of `a + b`.
    pub fn add_indices(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, |x, y, _| x + y)
    }

    /// Row-major index of `a - b`.
    pub fn sub_indices(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, |x, y, s| x + s - y)
    }

    pub fn neg_index(&self, a: usize) -> usize {
        self.sub_indices(0, a)
    }

    fn combine(&self, mut a: usize, mut b: usize, op: impl Fn(usize, usize, usize) -> usize) -> usize {
        let mut out = 0;
        let mut weight = 1;
        for &s in self.moduli.iter().rev() {
            out += (op(a % s, b % s, s) % s) * weight;
            weight *= s;
            a /= s;
            b /= s;
        }
        out
    }

    pub(crate) fn ensure_same(&self, other: &GroupSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::mismatch(self.moduli(), other.moduli()))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: GroupSpec,
    coords: Vec<usize>,
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl GroupElement {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn index(&self) -> usize {
        self.group.index_of_coords(&self.coords)
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.group.ensure_same(&other.group)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .zip(self.group.moduli())
            .map(|((&a, &b), &s)| (a + b) % s)
            .collect();
        Ok(GroupElement {
            group: self.group.clone(),
            coords,
        })
    }

    pub fn neg(&self) -> GroupElement {
        let coords = self
            .coords
            .iter()
            .zip(self.group.moduli())
            .map(|(&a, &s)| (s - a) % s)
            .collect();
        GroupElement {
            group: self.group.clone(),
            coords,
        }
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.add(&other.neg())
    }
}

/// A character `xi(h) = exp(2 pi i sum_j h_j xi_j / s_j)`, indexed by an
/// element of the (self-indexed) dual group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    index: GroupElement,
}

impl Character {
    pub fn new(index: GroupElement) -> Self {
        Self { index }
    }

    pub fn index(&self) -> &GroupElement {
        &self.index
    }

    pub fn value(&self, h: &GroupElement) -> Result<Complex64> {
        self.index.group.ensure_same(&h.group)?;
        Ok(self
            .index
            .coords
            .iter()
            .zip(&h.coords)
            .zip(self.index.group.moduli())
            .map(|((&xi, &hj), &s)| root_of_unity(((xi * hj) % s) as i64, s))
            .product())
    }
}

/// Complex values on every element of a finite abelian group, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SequenceWire", into = "SequenceWire")]
pub struct GroupSequence {
    group: GroupSpec,
    values: Vec<Complex64>,
}

impl GroupSequence {
    pub fn new(group: GroupSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::Dimension(format!(
                "sequence has {} values, group {:?} has order {}",
                values.len(),
                group,
                group.order()
            )));
        }
        Ok(Self { group, values })
    }

    pub fn from_real(group: GroupSpec, values: &[f64]) -> Result<Self> {
        Self::new(group, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn zeros(group: GroupSpec) -> Self {
        let n = group.order();
        Self {
            group,
            values: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    /// Unit impulse at the element with the given row-major index.
    pub fn delta(group: GroupSpec, at: usize) -> Self {
        let mut s = Self::zeros(group);
        s.values[at] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn from_fn(group: GroupSpec, mut f: impl FnMut(usize) -> Complex64) -> Self {
        let values = (0..group.order()).map(&mut f).collect();
        Self { group, values }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, h: &GroupElement) -> Result<Complex64> {
        self.group.ensure_same(h.group())?;
        Ok(self.values[h.index()])
    }

    pub fn at(&self, index: usize) -> Complex64 {
        self.values[index]
    }

    /// Unnormalized forward transform `x_hat(xi) = sum_h x(h) conj(xi(h))`.
    pub fn dft(&self) -> GroupSequence {
        self.separable_transform(-1, 1.0)
    }

    /// Inverse of [`dft`](Self::dft), carrying the `1/|H|` factor.
    pub fn idft(&self) -> GroupSequence {
        self.separable_transform(1, 1.0 / self.group.order() as f64)
    }

    // The transform factors into one 1-D DFT per axis.
    fn separable_transform(&self, sign: i64, scale: f64) -> GroupSequence {
        let moduli = self.group.moduli();
        let mut data = self.values.clone();
        let mut scratch = Vec::new();
        let mut inner = self.group.order();
        for &s in moduli {
            inner /= s;
            if s == 1 {
                continue;
            }
            let twiddles: Vec<Complex64> = (0..s).map(|k| root_of_unity(sign * k as i64, s)).collect();
            let outer = data.len() / (s * inner);
            scratch.resize(s, Complex64::new(0.0, 0.0));
            for o in 0..outer {
                for i in 0..inner {
                    let base = o * s * inner + i;
                    for (k, out) in scratch.iter_mut().enumerate() {
                        *out = (0..s)
                            .map(|j| data[base + j * inner] * twiddles[(j * k) % s])
                            .sum();
                    }
                    for (k, v) in scratch.iter().enumerate() {
                        data[base + k * inner] = *v;
                    }
                }
            }
        }
        if scale != 1.0 {
            data.iter_mut().for_each(|v| *v *= scale);
        }
        GroupSequence {
            group: self.group.clone(),
            values: data,
        }
    }

    /// Direct convolution `(a * x)(h) = sum_{h'} a(h - h') x(h')`.
    pub fn convolve(&self, x: &GroupSequence) -> Result<GroupSequence> {
        self.group.ensure_same(&x.group)?;
        let g = &self.group;
        let mut out = vec![Complex64::new(0.0, 0.0); g.order()];
        for (hp, &xv) in x.values.iter().enumerate() {
            if xv == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (h, o) in out.iter_mut().enumerate() {
                *o += self.values[g.sub_indices(h, hp)] * xv;
            }
        }
        Ok(GroupSequence {
            group: g.clone(),
            values: out,
        })
    }

    /// `a*(h) = conj(a(-h))`.
    pub fn involution(&self) -> GroupSequence {
        GroupSequence::from_fn(self.group.clone(), |h| self.values[self.group.neg_index(h)].conj())
    }

    /// Translate `(T_t x)(h) = x(h - t)`.
    pub fn translate(&self, t: usize) -> GroupSequence {
        GroupSequence::from_fn(self.group.clone(), |h| self.values[self.group.sub_indices(h, t)])
    }

    pub fn conj(&self) -> GroupSequence {
        GroupSequence {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    /// `<x, y> = sum_h x(h) conj(y(h))`.
    pub fn inner(&self, other: &GroupSequence) -> Result<Complex64> {
        self.group.ensure_same(&other.group)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, c: Complex64) -> GroupSequence {
        GroupSequence {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &GroupSequence) -> Result<f64> {
        self.group.ensure_same(&other.group)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub(crate) fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub(crate) fn add_assign_checked(&mut self, other: &GroupSequence) -> Result<()> {
        self.group.ensure_same(&other.group)?;
        self.values
            .iter_mut()
            .zip(&other.values)
            .for_each(|(a, b)| *a += b);
        Ok(())
    }
}

impl Add for &GroupSequence {
    type Output = GroupSequence;

    /// Panics when the groups differ.
    fn add(self, rhs: &GroupSequence) -> GroupSequence {
        let mut out = self.clone();
        out.add_assign_checked(rhs).expect("adding sequences over different groups");
        out
    }
}

impl Sub for &GroupSequence {
    type Output = GroupSequence;

    fn sub(self, rhs: &GroupSequence) -> GroupSequence {
        self + &rhs.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul<Complex64> for &GroupSequence {
    type Output = GroupSequence;

    fn mul(self, rhs: Complex64) -> GroupSequence {
        self.scale(rhs)
    }
}

/// JSON form `{ "moduli": [...], "re": [...], "im": [...] }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceWire {
    pub moduli: Vec<usize>,
    pub re: Vec<f64>,
    #[serde(default)]
    pub im: Option<Vec<f64>>,
}

impl TryFrom<SequenceWire> for GroupSequence {
    type Error = Error;

    fn try_from(w: SequenceWire) -> Result<Self> {
        let group = GroupSpec::new(w.moduli)?;
        let im = w.im.unwrap_or_else(|| vec![0.0; w.re.len()]);
        if im.len() != w.re.len() {
            return Err(Error::Dimension(format!(
                "re has {} entries but im has {}",
                w.re.len(),
                im.len()
            )));
        }
        let values = w.re.iter().zip(&im).map(|(&r, &i)| Complex64::new(r, i)).collect();
        GroupSequence::new(group, values)
    }
}

impl From<GroupSequence> for SequenceWire {
    fn from(s: GroupSequence) -> Self {
        SequenceWire {
            moduli: s.group.moduli().to_vec(),
            re: s.values.iter().map(|v| v.re).collect(),
            im: Some(s.values.iter().map(|v| v.im).collect()),
        }
    }
}

/// The product subgroup `d_1 Z_{s1} x ... x d_d Z_{sd}` of a parent group.
///
/// The subgroup is addressed through its abstract form
/// `Z_{s1/d1} x ... x Z_{sd/dd}`; `embed` maps `k` to `(d_j k_j)_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSubgroup {
    parent: GroupSpec,
    strides: Vec<usize>,
    abstract_group: GroupSpec,
}

impl ProductSubgroup {
    pub fn new(parent: GroupSpec, strides: Vec<usize>) -> Result<Self> {
        if strides.len() != parent.rank() {
            return Err(Error::Dimension(format!(
                "{} strides for a group of rank {}",
                strides.len(),
                parent.rank()
            )));
        }
        for (&d, &s) in strides.iter().zip(parent.moduli()) {
            if d == 0 || s % d != 0 {
                return Err(Error::InvalidGroup(format!(
                    "stride {d} does not divide modulus {s}"
                )));
            }
        }
        let abstract_group = GroupSpec::new(
            strides
                .iter()
                .zip(parent.moduli())
                .map(|(&d, &s)| s / d)
                .collect(),
        )?;
        Ok(Self {
            parent,
            strides,
            abstract_group,
        })
    }

    /// The parent group as a subgroup of itself.
    pub fn whole(parent: GroupSpec) -> Self {
        let strides = vec![1; parent.rank()];
        Self {
            abstract_group: parent.clone(),
            parent,
            strides,
        }
    }

    pub fn parent(&self) -> &GroupSpec {
        &self.parent
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn abstract_group(&self) -> &GroupSpec {
        &self.abstract_group
    }

    pub fn index(&self) -> usize {
        self.strides.iter().product()
    }

    pub fn embed(&self, k: &GroupElement) -> Result<GroupElement> {
        self.abstract_group.ensure_same(k.group())?;
        Ok(self.parent.element_at(self.embed_index(k.index())))
    }

    /// Parent row-major index of the embedded abstract element.
    pub fn embed_index(&self, k: usize) -> usize {
        let coords = self.abstract_group.coords_of(k);
        let embedded: Vec<usize> = coords
            .iter()
            .zip(&self.strides)
            .map(|(&c, &d)| c * d)
            .collect();
        self.parent.index_of_coords(&embedded)
    }

    /// One representative per coset, residues `0..d_j` in row-major order.
    pub fn coset_representatives(&self) -> Vec<GroupElement> {
        let residues = GroupSpec::new(self.strides.clone()).expect("strides are >= 1");
        residues
            .elements()
            .map(|r| self.parent.element_at(self.parent.index_of_coords(r.coords())))
            .collect()
    }

    /// Splits a parent index into `(coset, abstract)` with
    /// `g = h_coset + embed(abstract)`.
    pub fn decompose_index(&self, g: usize) -> (usize, usize) {
        let coords = self.parent.coords_of(g);
        let residue: Vec<usize> = coords.iter().zip(&self.strides).map(|(&c, &d)| c % d).collect();
        let quotient: Vec<usize> = coords.iter().zip(&self.strides).map(|(&c, &d)| c / d).collect();
        let residues = GroupSpec::new(self.strides.clone()).expect("strides are >= 1");
        (
            residues.index_of_coords(&residue),
            self.abstract_group.index_of_coords(&quotient),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn group_law() {
        let z4 = GroupSpec::cyclic(4).unwrap();
        let three = z4.element(&[3]).unwrap();
        let two = z4.element(&[2]).unwrap();
        assert_eq!(three.add(&two).unwrap().coords(), &[1]);
        assert_eq!(z4.element(&[1]).unwrap().neg().coords(), &[3]);

        let g = GroupSpec::new(vec![2, 3]).unwrap();
        let a = g.element(&[1, 2]).unwrap();
        assert_eq!(a.add(&a).unwrap().coords(), &[0, 1]);
    }

    #[test]
    fn mismatched_groups_rejected() {
        let a = GroupSpec::cyclic(4).unwrap().zero();
        let b = GroupSpec::cyclic(5).unwrap().zero();
        assert!(matches!(a.add(&b), Err(Error::GroupMismatch { .. })));
        let s = GroupSequence::zeros(GroupSpec::cyclic(4).unwrap());
        let t = GroupSequence::zeros(GroupSpec::cyclic(2).unwrap());
        assert!(s.convolve(&t).is_err());
    }

    #[test]
    fn invalid_moduli() {
        assert!(GroupSpec::new(vec![]).is_err());
        assert!(GroupSpec::new(vec![3, 0]).is_err());
        assert_eq!(GroupSpec::new(vec![1]).unwrap().order(), 1);
    }

    #[test]
    fn index_arithmetic_matches_elements() {
        let g = GroupSpec::new(vec![3, 4, 2]).unwrap();
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ea = g.element_at(a);
                let eb = g.element_at(b);
                assert_eq!(g.add_indices(a, b), ea.add(&eb).unwrap().index());
                assert_eq!(g.sub_indices(a, b), ea.sub(&eb).unwrap().index());
            }
        }
    }

    #[test]
    fn character_values() {
        let z2 = GroupSpec::cyclic(2).unwrap();
        let xi = Character::new(z2.element(&[1]).unwrap());
        assert_eq!(xi.value(&z2.element(&[1]).unwrap()).unwrap(), c(-1.0, 0.0));

        let z4 = GroupSpec::cyclic(4).unwrap();
        let xi = Character::new(z4.element(&[1]).unwrap());
        assert_eq!(xi.value(&z4.element(&[1]).unwrap()).unwrap(), c(0.0, 1.0));

        let g = GroupSpec::new(vec![3, 5]).unwrap();
        let trivial = Character::new(g.zero());
        for h in g.elements() {
            assert_eq!(trivial.value(&h).unwrap(), c(1.0, 0.0));
        }
    }

    #[test]
    fn dft_small_cases() {
        let z2 = GroupSpec::cyclic(2).unwrap();
        let x = GroupSequence::from_real(z2.clone(), &[1.0, 0.0]).unwrap();
        assert_eq!(x.dft().values(), &[c(1.0, 0.0), c(1.0, 0.0)]);
        let x = GroupSequence::from_real(z2, &[1.0, 1.0]).unwrap();
        assert_eq!(x.dft().values(), &[c(2.0, 0.0), c(0.0, 0.0)]);

        // direct summation: x_hat(xi) = 1 + 0.5 exp(-2 pi i xi / 4)
        let z4 = GroupSpec::cyclic(4).unwrap();
        let x = GroupSequence::from_real(z4, &[1.0, 0.5, 0.0, 0.0]).unwrap();
        let expected = [c(1.5, 0.0), c(1.0, -0.5), c(0.5, 0.0), c(1.0, 0.5)];
        for (got, want) in x.dft().values().iter().zip(expected) {
            assert!(close(*got, want), "{got} vs {want}");
        }
    }

    #[test]
    fn convolution_examples() {
        let z2 = GroupSpec::cyclic(2).unwrap();
        let ones = GroupSequence::from_real(z2, &[1.0, 1.0]).unwrap();
        assert_eq!(ones.convolve(&ones).unwrap().values(), &[c(2.0, 0.0), c(2.0, 0.0)]);

        let z4 = GroupSpec::cyclic(4).unwrap();
        let a = GroupSequence::from_real(z4.clone(), &[1.0, 0.5, 0.0, 0.0]).unwrap();
        let x = GroupSequence::from_real(z4.clone(), &[0.0, 1.0, 0.0, 0.0]).unwrap();
        let want = GroupSequence::from_real(z4.clone(), &[0.0, 1.0, 0.5, 0.0]).unwrap();
        assert_eq!(a.convolve(&x).unwrap(), want);

        let delta = GroupSequence::delta(z4, 0);
        assert_eq!(delta.convolve(&a).unwrap(), a);
    }

    #[test]
    fn involution_examples() {
        let z4 = GroupSpec::cyclic(4).unwrap();
        let a = GroupSequence::from_real(z4.clone(), &[1.0, 0.5, 0.0, 0.0]).unwrap();
        let want = GroupSequence::from_real(z4.clone(), &[1.0, 0.0, 0.0, 0.5]).unwrap();
        assert_eq!(a.involution(), want);

        let z2 = GroupSpec::cyclic(2).unwrap();
        let b = GroupSequence::new(z2.clone(), vec![c(0.0, 1.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(b.involution().values(), &[c(0.0, -1.0), c(0.0, 0.0)]);

        let even = GroupSequence::from_real(z4, &[2.0, 1.0, 3.0, 1.0]).unwrap();
        assert_eq!(even.involution(), even);
    }

    #[test]
    fn coset_representatives_examples() {
        let z4 = GroupSpec::cyclic(4).unwrap();
        let sub = ProductSubgroup::new(z4.clone(), vec![2]).unwrap();
        let reps: Vec<_> = sub.coset_representatives().iter().map(|e| e.coords().to_vec()).collect();
        assert_eq!(reps, vec![vec![0], vec![1]]);
        assert_eq!(sub.index(), 2);

        let whole = ProductSubgroup::whole(z4);
        assert_eq!(whole.coset_representatives().len(), 1);
        assert_eq!(whole.index(), 1);

        let g = GroupSpec::new(vec![4, 3]).unwrap();
        let sub = ProductSubgroup::new(g, vec![2, 3]).unwrap();
        let reps: Vec<_> = sub.coset_representatives().iter().map(|e| e.coords().to_vec()).collect();
        assert_eq!(
            reps,
            vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![1, 2]]
        );
        assert_eq!(sub.index(), 6);
    }

    #[test]
    fn non_dividing_stride_rejected() {
        let z6 = GroupSpec::cyclic(6).unwrap();
        assert!(ProductSubgroup::new(z6.clone(), vec![4]).is_err());
        assert!(ProductSubgroup::new(z6, vec![0]).is_err());
    }

    #[test]
    fn sequence_json_form() {
        let z2 = GroupSpec::cyclic(2).unwrap();
        let s = GroupSequence::new(z2, vec![c(1.0, 0.5), c(-2.0, 0.0)]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"moduli":[2],"re":[1.0,-2.0],"im":[0.5,0.0]}"#);
        let back: GroupSequence = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<GroupSequence>(r#"{"moduli":[3],"re":[1.0]}"#).is_err());
        assert!(serde_json::from_str::<GroupSequence>(r#"{"moduli":[1],"re":[1.0],"x":1}"#).is_err());
    }
}
