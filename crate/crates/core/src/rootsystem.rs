//! Root systems of the finite Coxeter groups, with exact coefficients.
//!
//! Roots are stored as coefficient vectors over the simple system, never as
//! ambient-space coordinates: integer entries for the crystallographic
//! families, Z[tau] entries for H3, H4 and I2(5). A system is generated by
//! saturating the simple roots under simple reflections; the closure is
//! finite exactly when the catalog Gram matrix is positive definite, and a
//! cap turns any misuse into an error instead of a hang.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::linalg::GoldenMat;
use crate::scalar::{GoldenInt, GoldenRational, TAU, ZERO};
use crate::{Error, Result};

pub const MAX_RANK: usize = 8;
const ROOT_CAP: usize = 10_000;
const ITER_CAP: usize = 100_000;

/// Supported irreducible types, plus the reducible rank-2 system A1xA1
/// (needed by the dihedral checks).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum TypeLabel {
    A(u8),
    B(u8),
    C(u8),
    D(u8),
    E(u8),
    F4,
    G2,
    H3,
    H4,
    /// The dihedral system I2(5), the rank-2 golden case.
    I5,
    A1xA1,
}

impl TypeLabel {
    pub fn rank(self) -> usize {
        match self {
            TypeLabel::A(n) | TypeLabel::B(n) | TypeLabel::C(n) | TypeLabel::D(n)
            | TypeLabel::E(n) => n as usize,
            TypeLabel::F4 | TypeLabel::H4 => 4,
            TypeLabel::G2 | TypeLabel::I5 | TypeLabel::A1xA1 => 2,
            TypeLabel::H3 => 3,
        }
    }

    /// Crystallographic at the level of the catalog normalization.
    pub fn crystallographic(self) -> bool {
        !matches!(self, TypeLabel::H3 | TypeLabel::H4 | TypeLabel::I5)
    }

    /// Whether coefficients genuinely use the tau component.
    pub fn golden(self) -> bool {
        !self.crystallographic()
    }

    fn validate(self) -> Result<Self> {
        let (family, lo, hi, n) = match self {
            TypeLabel::A(n) => ("A", 1, MAX_RANK, n as usize),
            TypeLabel::B(n) => ("B", 2, MAX_RANK, n as usize),
            TypeLabel::C(n) => ("C", 3, MAX_RANK, n as usize),
            TypeLabel::D(n) => ("D", 4, MAX_RANK, n as usize),
            TypeLabel::E(n) => ("E", 6, 8, n as usize),
            _ => return Ok(self),
        };
        if n < lo || n > hi {
            return Err(Error::RankOutOfRange { family: family.into(), rank: n });
        }
        Ok(self)
    }

    /// The default verification lineup. E8 is constructible but opt-in.
    pub fn default_set(deep: bool) -> Vec<TypeLabel> {
        let mut v = Vec::new();
        for n in 1..=6 {
            v.push(TypeLabel::A(n));
        }
        for n in 2..=6 {
            v.push(TypeLabel::B(n));
        }
        for n in 3..=6 {
            v.push(TypeLabel::C(n));
        }
        for n in 4..=6 {
            v.push(TypeLabel::D(n));
        }
        v.push(TypeLabel::E(6));
        v.push(TypeLabel::E(7));
        if deep {
            v.push(TypeLabel::E(8));
        }
        v.extend([
            TypeLabel::F4,
            TypeLabel::G2,
            TypeLabel::H3,
            TypeLabel::H4,
            TypeLabel::I5,
            TypeLabel::A1xA1,
        ]);
        v
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeLabel::A(n) => write!(f, "A{n}"),
            TypeLabel::B(n) => write!(f, "B{n}"),
            TypeLabel::C(n) => write!(f, "C{n}"),
            TypeLabel::D(n) => write!(f, "D{n}"),
            TypeLabel::E(n) => write!(f, "E{n}"),
            TypeLabel::F4 => write!(f, "F4"),
            TypeLabel::G2 => write!(f, "G2"),
            TypeLabel::H3 => write!(f, "H3"),
            TypeLabel::H4 => write!(f, "H4"),
            TypeLabel::I5 => write!(f, "I2(5)"),
            TypeLabel::A1xA1 => write!(f, "A1xA1"),
        }
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownLabel(s.to_string());
        match s {
            "F4" => return Ok(TypeLabel::F4),
            "G2" => return Ok(TypeLabel::G2),
            "H3" => return Ok(TypeLabel::H3),
            "H4" => return Ok(TypeLabel::H4),
            "I2(5)" => return Ok(TypeLabel::I5),
            "A1xA1" => return Ok(TypeLabel::A1xA1),
            _ => {}
        }
        let (family, digits) = s.split_at_checked(1).ok_or_else(bad)?;
        let n: u8 = digits.parse().map_err(|_| bad())?;
        let label = match family {
            "A" => TypeLabel::A(n),
            "B" => TypeLabel::B(n),
            "C" => TypeLabel::C(n),
            "D" => TypeLabel::D(n),
            "E" => TypeLabel::E(n),
            _ => return Err(bad()),
        };
        label.validate().map_err(|_| bad())
    }
}

/// Catalog Gram matrix: inner products of the simple roots.
///
/// Normalizations: every simply-laced and golden type has squared length 2
/// with off-diagonal 0, -1 or -tau; B, C and F4 give long roots squared
/// length 4 with -2 across the double bond; G2 uses (2, 6) with -3.
/// B_n puts the short simple root last, C_n the long one, so the two carry
/// genuinely different (transposed) normalizations on the same group.
fn catalog_gram(label: TypeLabel) -> GoldenMat {
    let n = label.rank();
    let gi = GoldenInt::from_int;
    let mut m = GoldenMat::zero(n, n);
    let path = |m: &mut GoldenMat, edges: &[(usize, usize, GoldenInt)]| {
        for &(i, j, v) in edges {
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    };
    match label {
        TypeLabel::A(_) | TypeLabel::H3 | TypeLabel::H4 | TypeLabel::I5 => {
            for i in 0..n {
                m[(i, i)] = gi(2);
            }
            for i in 0..n.saturating_sub(1) {
                let v = if matches!(label, TypeLabel::H3 | TypeLabel::H4 | TypeLabel::I5)
                    && i == 0
                {
                    -TAU
                } else {
                    gi(-1)
                };
                path(&mut m, &[(i, i + 1, v)]);
            }
        }
        TypeLabel::A1xA1 => {
            m[(0, 0)] = gi(2);
            m[(1, 1)] = gi(2);
        }
        TypeLabel::B(_) => {
            for i in 0..n - 1 {
                m[(i, i)] = gi(4);
            }
            m[(n - 1, n - 1)] = gi(2);
            for i in 0..n - 1 {
                path(&mut m, &[(i, i + 1, gi(-2))]);
            }
        }
        TypeLabel::C(_) => {
            for i in 0..n - 1 {
                m[(i, i)] = gi(2);
            }
            m[(n - 1, n - 1)] = gi(4);
            for i in 0..n - 2 {
                path(&mut m, &[(i, i + 1, gi(-1))]);
            }
            path(&mut m, &[(n - 2, n - 1, gi(-2))]);
        }
        TypeLabel::D(_) => {
            for i in 0..n {
                m[(i, i)] = gi(2);
            }
            for i in 0..n - 3 {
                path(&mut m, &[(i, i + 1, gi(-1))]);
            }
            path(&mut m, &[(n - 3, n - 2, gi(-1)), (n - 3, n - 1, gi(-1))]);
        }
        TypeLabel::E(_) => {
            for i in 0..n {
                m[(i, i)] = gi(2);
            }
            let mut edges = vec![(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)];
            if n >= 7 {
                edges.push((5, 6));
            }
            if n == 8 {
                edges.push((6, 7));
            }
            for (i, j) in edges {
                path(&mut m, &[(i, j, gi(-1))]);
            }
        }
        TypeLabel::F4 => {
            m[(0, 0)] = gi(4);
            m[(1, 1)] = gi(4);
            m[(2, 2)] = gi(2);
            m[(3, 3)] = gi(2);
            path(&mut m, &[(0, 1, gi(-2)), (1, 2, gi(-2)), (2, 3, gi(-1))]);
        }
        TypeLabel::G2 => {
            m[(0, 0)] = gi(2);
            m[(1, 1)] = gi(6);
            path(&mut m, &[(0, 1, gi(-3))]);
        }
    }
    m
}

/// A Coxeter system presentation: the label, its rank, and the matrix of
/// orders m(i,j) of the pairwise products of simple reflections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterDatum {
    pub label: TypeLabel,
    pub rank: usize,
    pub coxeter: Vec<Vec<u32>>,
}

impl CoxeterDatum {
    pub fn new(label: TypeLabel) -> Result<Self> {
        let label = label.validate()?;
        let gram = catalog_gram(label);
        let coxeter = coxeter_matrix_of_gram(&gram)?;
        Ok(CoxeterDatum { label, rank: label.rank(), coxeter })
    }
}

/// Recovers m(i,j) from a Gram matrix via 4 cos^2(pi/m) =
/// 4 <a_i,a_j>^2 / (<a_i,a_i> <a_j,a_j>), which only takes the values
/// 0, 1, 2, 3, 1+tau for the finite catalog.
pub fn coxeter_matrix_of_gram(gram: &GoldenMat) -> Result<Vec<Vec<u32>>> {
    let n = gram.rows;
    let mut m = vec![vec![2u32; n]; n];
    for i in 0..n {
        m[i][i] = 1;
        for j in i + 1..n {
            let num: GoldenRational = (gram[(i, j)] * gram[(i, j)] * 4).into();
            let den: GoldenRational = (gram[(i, i)] * gram[(j, j)]).into();
            let ratio = num * den.recip();
            let val = match ratio.as_golden_int() {
                Some(x) if x == ZERO => 2,
                Some(x) if x == GoldenInt::from_int(1) => 3,
                Some(x) if x == GoldenInt::from_int(2) => 4,
                Some(x) if x == GoldenInt::from_int(3) => 6,
                Some(x) if x == GoldenInt::new(1, 1) => 5,
                _ => return Err(Error::UnknownGraph),
            };
            m[i][j] = val;
            m[j][i] = val;
        }
    }
    Ok(m)
}

/// A root as a coefficient vector over the simple system.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVec {
    pub coeffs: Vec<GoldenInt>,
}

impl RootVec {
    pub fn new(coeffs: Vec<GoldenInt>) -> Self {
        RootVec { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        RootVec { coeffs: coeffs.iter().map(|&c| GoldenInt::from_int(c)).collect() }
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut coeffs = vec![ZERO; rank];
        coeffs[i] = GoldenInt::from_int(1);
        RootVec { coeffs }
    }

    /// Indices of the nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// +1 if all coefficients are >= 0 in the real embedding, -1 if all <= 0,
    /// 0 otherwise (which never happens for roots of a valid system).
    pub fn coherence_sign(&self) -> i8 {
        let mut sign = 0i8;
        for c in &self.coeffs {
            let s = c.sign();
            if s == 0 {
                continue;
            }
            if sign == 0 {
                sign = s;
            } else if sign != s {
                return 0;
            }
        }
        sign
    }
}

impl fmt::Debug for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A finite root system with all derived lookup tables.
///
/// Tables make orbit walks pure index chasing: `refl[j][r]` is the index of
/// the reflection of root `r` in the j-th simple root, and `pairing[r][j]`
/// caches `<root_r, alpha_j>`.
pub struct RootSystem {
    pub datum: CoxeterDatum,
    pub gram: GoldenMat,
    roots: Vec<RootVec>,
    index: HashMap<Vec<GoldenInt>, u32>,
    positive: Vec<bool>,
    simple_idx: Vec<u32>,
    neg_of: Vec<u32>,
    refl: Vec<Vec<u32>>,
    pairing: Vec<Vec<GoldenInt>>,
    sq_len: Vec<GoldenInt>,
    orbit_id: Vec<u32>,
    n_orbits: usize,
    crystallographic: bool,
}

impl RootSystem {
    pub fn new(label: TypeLabel) -> Result<Self> {
        let datum = CoxeterDatum::new(label)?;
        Self::from_gram(datum, catalog_gram(label))
    }

    /// Generates the reflection closure of the simple basis under the given
    /// Gram matrix. Errors out (rather than spinning) when the closure blows
    /// past the finite-system cap or a reflection leaves the lattice.
    pub fn from_gram(datum: CoxeterDatum, gram: GoldenMat) -> Result<Self> {
        let n = datum.rank;
        assert_eq!(gram.rows, n);
        assert_eq!(gram.cols, n);
        for i in 0..n {
            if gram[(i, i)].sign() <= 0 {
                return Err(Error::BadClosure("non-positive diagonal".into()));
            }
        }

        let mut seen: HashMap<Vec<GoldenInt>, u32> = HashMap::new();
        let mut list: Vec<Vec<GoldenInt>> = Vec::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let v = RootVec::simple(n, i).coeffs;
            seen.insert(v.clone(), list.len() as u32);
            list.push(v.clone());
            queue.push_back(v);
        }
        let mut iters = 0usize;
        while let Some(v) = queue.pop_front() {
            iters += 1;
            if iters > ITER_CAP {
                return Err(Error::BadClosure("iteration cap exceeded".into()));
            }
            for j in 0..n {
                let w = reflect_simple(&gram, &v, j)
                    .ok_or_else(|| Error::BadClosure("reflection left the lattice".into()))?;
                if !seen.contains_key(&w) {
                    if list.len() >= ROOT_CAP {
                        return Err(Error::BadClosure("root cap exceeded".into()));
                    }
                    seen.insert(w.clone(), list.len() as u32);
                    list.push(w.clone());
                    queue.push_back(w);
                }
            }
        }

        let mut roots: Vec<RootVec> = list.into_iter().map(RootVec::new).collect();
        roots.sort();
        let index: HashMap<Vec<GoldenInt>, u32> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coeffs.clone(), i as u32))
            .collect();

        let m = roots.len();
        let mut positive = vec![false; m];
        let mut n_pos = 0;
        for (r, root) in roots.iter().enumerate() {
            match root.coherence_sign() {
                1 => {
                    positive[r] = true;
                    n_pos += 1;
                }
                -1 => {}
                _ => return Err(Error::BadClosure("root is not sign-coherent".into())),
            }
        }
        if 2 * n_pos != m {
            return Err(Error::BadClosure("positive roots are not half the system".into()));
        }

        let simple_idx: Vec<u32> = (0..n)
            .map(|i| index[&RootVec::simple(n, i).coeffs])
            .collect();
        let neg_of: Vec<u32> = roots
            .iter()
            .map(|r| {
                let neg: Vec<GoldenInt> = r.coeffs.iter().map(|&c| -c).collect();
                index[&neg]
            })
            .collect();

        let mut pairing = vec![vec![ZERO; n]; m];
        for (r, root) in roots.iter().enumerate() {
            for j in 0..n {
                let mut acc = ZERO;
                for i in 0..n {
                    if !root.coeffs[i].is_zero() {
                        acc += root.coeffs[i] * gram[(i, j)];
                    }
                }
                pairing[r][j] = acc;
            }
        }

        let mut refl = vec![vec![0u32; m]; n];
        for j in 0..n {
            for r in 0..m {
                let w = reflect_simple(&gram, &roots[r].coeffs, j)
                    .ok_or_else(|| Error::BadClosure("reflection left the lattice".into()))?;
                refl[j][r] = *index
                    .get(&w)
                    .ok_or_else(|| Error::BadClosure("closure is not reflection-stable".into()))?;
            }
        }

        let sq_len: Vec<GoldenInt> = (0..m)
            .map(|r| {
                let c = &roots[r].coeffs;
                let mut acc = ZERO;
                for i in 0..n {
                    for j in 0..n {
                        if !c[i].is_zero() && !c[j].is_zero() {
                            acc += c[i] * c[j] * gram[(i, j)];
                        }
                    }
                }
                acc
            })
            .collect();

        // Orbits of the full group on the roots, by flood fill over the
        // simple reflection tables.
        let mut orbit_id = vec![u32::MAX; m];
        let mut n_orbits = 0usize;
        for start in 0..m {
            if orbit_id[start] != u32::MAX {
                continue;
            }
            let id = n_orbits as u32;
            n_orbits += 1;
            let mut stack = vec![start as u32];
            orbit_id[start] = id;
            while let Some(r) = stack.pop() {
                for j in 0..n {
                    let s = refl[j][r as usize];
                    if orbit_id[s as usize] == u32::MAX {
                        orbit_id[s as usize] = id;
                        stack.push(s);
                    }
                }
            }
        }

        let mut crystallographic = true;
        'outer: for r in 0..m {
            for j in 0..n {
                let two = pairing[r][j] * 2;
                match two.div_exact(gram[(j, j)]) {
                    Some(c) if c.is_int() => {}
                    _ => {
                        crystallographic = false;
                        break 'outer;
                    }
                }
            }
        }

        Ok(RootSystem {
            datum,
            gram,
            roots,
            index,
            positive,
            simple_idx,
            neg_of,
            refl,
            pairing,
            sq_len,
            orbit_id,
            n_orbits,
            crystallographic,
        })
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    #[inline]
    pub fn n_roots(&self) -> usize {
        self.roots.len()
    }

    #[inline]
    pub fn root(&self, r: u32) -> &RootVec {
        &self.roots[r as usize]
    }

    pub fn roots(&self) -> &[RootVec] {
        &self.roots
    }

    pub fn index_of(&self, coeffs: &[GoldenInt]) -> Option<u32> {
        self.index.get(coeffs).copied()
    }

    #[inline]
    pub fn is_positive(&self, r: u32) -> bool {
        self.positive[r as usize]
    }

    pub fn positive_indices(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.n_roots() as u32).filter(|&r| self.is_positive(r))
    }

    #[inline]
    pub fn simple(&self, i: usize) -> u32 {
        self.simple_idx[i]
    }

    #[inline]
    pub fn neg(&self, r: u32) -> u32 {
        self.neg_of[r as usize]
    }

    /// Image of root `r` under the i-th simple reflection, by table lookup.
    #[inline]
    pub fn s_apply(&self, i: usize, r: u32) -> u32 {
        self.refl[i][r as usize]
    }

    /// `<root_r, alpha_j>`.
    #[inline]
    pub fn pairing(&self, r: u32, j: usize) -> GoldenInt {
        self.pairing[r as usize][j]
    }

    #[inline]
    pub fn sq_len(&self, r: u32) -> GoldenInt {
        self.sq_len[r as usize]
    }

    #[inline]
    pub fn orbit_class(&self, r: u32) -> u32 {
        self.orbit_id[r as usize]
    }

    pub fn n_orbit_classes(&self) -> usize {
        self.n_orbits
    }

    pub fn crystallographic(&self) -> bool {
        self.crystallographic
    }

    /// A pair of roots witnessing failure of the crystallographic condition,
    /// if there is one: `<alpha, beta^v>` is not a rational integer.
    pub fn crystallographic_witness(&self) -> Option<(u32, u32)> {
        for r in 0..self.n_roots() as u32 {
            for j in 0..self.rank() {
                let two = self.pairing(r, j) * 2;
                match two.div_exact(self.gram[(j, j)]) {
                    Some(c) if c.is_int() => {}
                    _ => return Some((r, self.simple(j))),
                }
            }
        }
        None
    }

    /// Connectivity of the Coxeter graph.
    pub fn is_irreducible(&self) -> bool {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && self.datum.coxeter[i][j] > 2 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// <u, v> for arbitrary coefficient vectors.
    pub fn inner(&self, u: &[GoldenInt], v: &[GoldenInt]) -> GoldenInt {
        let n = self.rank();
        let mut acc = ZERO;
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            let mut row = ZERO;
            for j in 0..n {
                if !v[j].is_zero() {
                    row += self.gram[(i, j)] * v[j];
                }
            }
            acc += u[i] * row;
        }
        acc
    }

    /// Reflection of an arbitrary lattice vector in the root with index `g`.
    /// Panics if the reflection coefficient leaves Z[tau], which cannot
    /// happen for vectors in the root lattice.
    pub fn reflect_vec(&self, g: u32, v: &[GoldenInt]) -> Vec<GoldenInt> {
        let groot = &self.roots[g as usize];
        let num = self.inner(v, &groot.coeffs) * 2;
        let c = num
            .div_exact(self.sq_len[g as usize])
            .expect("reflection coefficient stays in Z[tau] on the root lattice");
        let mut out = v.to_vec();
        for i in 0..self.rank() {
            if !groot.coeffs[i].is_zero() {
                out[i] -= c * groot.coeffs[i];
            }
        }
        out
    }

    /// Reflection of a vector in the j-th simple root; touches only slot j.
    pub fn reflect_vec_simple(&self, j: usize, v: &[GoldenInt]) -> Vec<GoldenInt> {
        let mut pair = ZERO;
        for i in 0..self.rank() {
            if !v[i].is_zero() {
                pair += v[i] * self.gram[(i, j)];
            }
        }
        let c = (pair * 2)
            .div_exact(self.gram[(j, j)])
            .expect("reflection coefficient stays in Z[tau] on the root lattice");
        let mut out = v.to_vec();
        out[j] -= c;
        out
    }

    /// The permutation of all roots induced by the reflection in root `g`.
    pub fn reflection_perm(&self, g: u32) -> Vec<u32> {
        (0..self.n_roots() as u32)
            .map(|r| {
                let img = self.reflect_vec(g, &self.roots[r as usize].coeffs);
                self.index[&img]
            })
            .collect()
    }

    /// Coroot 2a/<a,a> as a rational coefficient vector.
    pub fn coroot(&self, r: u32) -> Vec<GoldenRational> {
        let root = &self.roots[r as usize];
        let len: GoldenRational = self.sq_len[r as usize].into();
        let scale = GoldenRational::from_int(2) * len.recip();
        root.coeffs
            .iter()
            .map(|&c| GoldenRational::from(c) * scale)
            .collect()
    }

    /// Rescales each orbit class by a positive factor. Coefficient vectors
    /// cannot see a global scaling of the ambient form, so the result is
    /// renormalized to the canonical gauge in which the shortest simple
    /// root has squared length 2; every catalog Gram already sits in that
    /// gauge, which makes `factors = 1` an exact identity and the dual an
    /// exact involution. Errors when the rescaled system has no integral
    /// coefficient basis.
    pub fn rescale(&self, factors: &[GoldenRational]) -> Result<RootSystem> {
        assert_eq!(factors.len(), self.n_orbits, "one factor per orbit class");
        for (k, f) in factors.iter().enumerate() {
            if f.sign() <= 0 {
                return Err(Error::NonPositiveFactor(k));
            }
        }
        let n = self.rank();
        let d: Vec<GoldenRational> = (0..n)
            .map(|i| factors[self.orbit_class(self.simple(i)) as usize])
            .collect();
        let mut entries = vec![vec![GoldenRational::from_int(0); n]; n];
        for i in 0..n {
            for j in 0..n {
                entries[i][j] = d[i] * d[j] * GoldenRational::from(self.gram[(i, j)]);
            }
        }
        let mut min_diag = entries[0][0];
        for (i, row) in entries.iter().enumerate().skip(1) {
            if (row[i] - min_diag).sign() < 0 {
                min_diag = row[i];
            }
        }
        let lambda = GoldenRational::from_int(2) * min_diag.recip();
        let mut gram = GoldenMat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                match (entries[i][j] * lambda).as_golden_int() {
                    Some(x) => gram[(i, j)] = x,
                    None => return Err(Error::NonIntegralRescale),
                }
            }
        }
        match Self::from_gram(self.datum.clone(), gram) {
            Ok(s) => Ok(s),
            Err(Error::BadClosure(msg)) if msg.contains("lattice") => {
                Err(Error::NonIntegralRescale)
            }
            Err(e) => Err(e),
        }
    }

    /// Coefficients of the rescaled image of root `r` over the rescaled
    /// simple basis: c_i * d_r / d_i. `None` when they leave Z[tau].
    pub fn rescaled_coeffs(
        &self,
        factors: &[GoldenRational],
        r: u32,
    ) -> Option<Vec<GoldenInt>> {
        let d_r = factors[self.orbit_class(r) as usize];
        let root = &self.roots[r as usize];
        let mut out = Vec::with_capacity(self.rank());
        for i in 0..self.rank() {
            let d_i = factors[self.orbit_class(self.simple(i)) as usize];
            let c = GoldenRational::from(root.coeffs[i]) * d_r * d_i.recip();
            out.push(c.as_golden_int()?);
        }
        Some(out)
    }

    /// Factors sending each root a to its coroot 2a/<a,a>.
    pub fn dual_factors(&self) -> Vec<GoldenRational> {
        (0..self.n_orbits)
            .map(|k| {
                let rep = (0..self.n_roots() as u32)
                    .find(|&r| self.orbit_class(r) == k as u32)
                    .expect("every class has a representative");
                let len: GoldenRational = self.sq_len[rep as usize].into();
                GoldenRational::from_int(2) * len.recip()
            })
            .collect()
    }

    /// The dual root system: every root replaced by its coroot, then
    /// renormalized to an integral Gram matrix.
    pub fn dual(&self) -> Result<RootSystem> {
        self.rescale(&self.dual_factors())
    }

    /// JSON document: label, rank, Gram, roots (canonical order) and the
    /// indices of the positive roots. Golden systems spell every scalar as
    /// `[a, b]` meaning a + b*tau; crystallographic systems use plain
    /// integers.
    pub fn to_json(&self) -> serde_json::Value {
        let golden = self.datum.label.golden();
        let scalar = |x: GoldenInt| -> serde_json::Value {
            if golden {
                serde_json::json!([x.a, x.b])
            } else {
                debug_assert!(x.is_int());
                serde_json::json!(x.a)
            }
        };
        let gram: Vec<Vec<serde_json::Value>> = (0..self.rank())
            .map(|i| (0..self.rank()).map(|j| scalar(self.gram[(i, j)])).collect())
            .collect();
        let roots: Vec<Vec<serde_json::Value>> = self
            .roots
            .iter()
            .map(|r| r.coeffs.iter().map(|&c| scalar(c)).collect())
            .collect();
        let positive: Vec<u32> = self.positive_indices().collect();
        serde_json::json!({
            "label": self.datum.label.to_string(),
            "rank": self.rank(),
            "gram": gram,
            "roots": roots,
            "positive": positive,
        })
    }
}

/// One simple reflection applied to a coefficient vector:
/// s_j(v) = v - (2<v,a_j>/<a_j,a_j>) a_j. `None` when the coefficient
/// fails to lie in Z[tau].
fn reflect_simple(gram: &GoldenMat, v: &[GoldenInt], j: usize) -> Option<Vec<GoldenInt>> {
    let n = v.len();
    let mut pair = ZERO;
    for i in 0..n {
        if !v[i].is_zero() {
            pair += v[i] * gram[(i, j)];
        }
    }
    let c = (pair * 2).div_exact(gram[(j, j)])?;
    let mut out = v.to_vec();
    out[j] -= c;
    Some(out)
}
