//! Folding the golden root systems into simply-laced integer lattices.
//!
//! A system over Z[tau] with all roots of squared length 2 doubles into an
//! integer root system: the lattice gets one basis copy of the simple
//! roots and one of their tau-multiples, a coefficient a + b*tau splits
//! into the integer pair (a, b), and the bilinear form is pushed through
//! the ring homomorphism theta(a + b*tau) = a. The doubled set
//! Psi = Phi U tau*Phi is simply laced; H4 doubles to E8, H3 to D6 and
//! I2(5) to A4. Each source reflection factors into the two integer
//! reflections of a bundle {alpha, tau*alpha}, which doubles lengths.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cert::{Certificate, CheckKind};
use crate::linalg::GoldenMat;
use crate::rootsystem::{RootSystem, TypeLabel};
use crate::scalar::{GoldenInt, TAU, ZERO};
use crate::weyl::Parabolic;
use crate::{Error, Result};

/// The doubled system. `psi` is canonically sorted; `delta` (the doubled
/// simple system) is by construction the standard basis of the lattice,
/// source copy first, tau copy second.
pub struct FoldedSystem {
    pub source: RootSystem,
    pub lattice_rank: usize,
    pub delta: Vec<Vec<i64>>,
    pub psi: Vec<Vec<i64>>,
    /// Integer Gram matrix of the pushed-forward form on the doubled basis.
    pub form: Vec<Vec<i64>>,
    psi_index: HashMap<Vec<i64>, u32>,
    /// psi index of the plain copy of each source root.
    from_phi: Vec<u32>,
    /// psi index of the tau copy of each source root.
    from_tau_phi: Vec<u32>,
    /// The other member of each psi element's bundle.
    partner: Vec<u32>,
    positive: Vec<bool>,
}

fn iota(coeffs: &[GoldenInt]) -> Vec<i64> {
    let n = coeffs.len();
    let mut v = vec![0i64; 2 * n];
    for (i, c) in coeffs.iter().enumerate() {
        v[i] = c.a;
        v[n + i] = c.b;
    }
    v
}

fn tau_times(coeffs: &[GoldenInt]) -> Vec<GoldenInt> {
    coeffs.iter().map(|&c| c * TAU).collect()
}

/// Doubles a golden root system. Requires every root of squared length 2,
/// which holds for the catalog normalizations of H3, H4 and I2(5).
pub fn fold(source: RootSystem) -> Result<FoldedSystem> {
    if !source.datum.label.golden() {
        return Err(Error::NotFoldable(format!(
            "{} is not a golden type",
            source.datum.label
        )));
    }
    let n = source.rank();
    for r in 0..source.n_roots() as u32 {
        if source.sq_len(r) != GoldenInt::from_int(2) {
            return Err(Error::NotFoldable(
                "source roots must have squared length 2".into(),
            ));
        }
    }

    // form on the doubled basis: theta of the golden Gram on the four
    // block combinations (1,1), (1,tau), (tau,1), (tau,tau)
    let mut form = vec![vec![0i64; 2 * n]; 2 * n];
    for i in 0..n {
        for k in 0..n {
            let g = source.gram[(i, k)];
            form[i][k] = g.a;
            form[i][n + k] = g.b;
            form[n + i][k] = g.b;
            form[n + i][n + k] = g.a + g.b;
        }
    }
    for i in 0..2 * n {
        for k in 0..2 * n {
            if i != k && !matches!(form[i][k], 0 | -1) {
                return Err(Error::NotFoldable(format!(
                    "doubled simple pair ({i},{k}) has product {}",
                    form[i][k]
                )));
            }
            if i == k && form[i][k] != 2 {
                return Err(Error::NotFoldable("doubled basis is not length 2".into()));
            }
        }
    }

    let delta: Vec<Vec<i64>> = (0..2 * n)
        .map(|i| {
            let mut e = vec![0i64; 2 * n];
            e[i] = 1;
            e
        })
        .collect();

    let mut psi: Vec<Vec<i64>> = Vec::with_capacity(2 * source.n_roots());
    for r in 0..source.n_roots() as u32 {
        psi.push(iota(&source.root(r).coeffs));
        psi.push(iota(&tau_times(&source.root(r).coeffs)));
    }
    psi.sort();
    psi.dedup();
    if psi.len() != 2 * source.n_roots() {
        return Err(Error::NotFoldable(
            "plain and tau copies of the roots are not disjoint".into(),
        ));
    }
    let psi_index: HashMap<Vec<i64>, u32> = psi
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i as u32))
        .collect();

    let from_phi: Vec<u32> = (0..source.n_roots() as u32)
        .map(|r| psi_index[&iota(&source.root(r).coeffs)])
        .collect();
    let from_tau_phi: Vec<u32> = (0..source.n_roots() as u32)
        .map(|r| psi_index[&iota(&tau_times(&source.root(r).coeffs))])
        .collect();
    let mut partner = vec![u32::MAX; psi.len()];
    for r in 0..source.n_roots() {
        partner[from_phi[r] as usize] = from_tau_phi[r];
        partner[from_tau_phi[r] as usize] = from_phi[r];
    }

    let positive: Vec<bool> = psi
        .iter()
        .map(|v| {
            let pos = v.iter().all(|&c| c >= 0);
            let neg = v.iter().all(|&c| c <= 0);
            assert!(pos != neg, "psi elements are sign-coherent and nonzero");
            pos
        })
        .collect();

    Ok(FoldedSystem {
        source,
        lattice_rank: 2 * n,
        delta,
        psi,
        form,
        psi_index,
        from_phi,
        from_tau_phi,
        partner,
        positive,
    })
}

impl FoldedSystem {
    pub fn n_psi(&self) -> usize {
        self.psi.len()
    }

    pub fn form_value(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut acc = 0i64;
        for i in 0..self.lattice_rank {
            if x[i] == 0 {
                continue;
            }
            let mut row = 0i64;
            for k in 0..self.lattice_rank {
                row += self.form[i][k] * y[k];
            }
            acc += x[i] * row;
        }
        acc
    }

    /// Integer reflection in a length-2 lattice vector.
    pub fn reflect_u(&self, alpha: &[i64], v: &[i64]) -> Vec<i64> {
        debug_assert_eq!(self.form_value(alpha, alpha), 2);
        let c = self.form_value(v, alpha);
        v.iter().zip(alpha).map(|(&vi, &ai)| vi - c * ai).collect()
    }

    pub fn psi_idx(&self, v: &[i64]) -> Option<u32> {
        self.psi_index.get(v).copied()
    }

    pub fn plain_copy(&self, r: u32) -> u32 {
        self.from_phi[r as usize]
    }

    pub fn tau_copy(&self, r: u32) -> u32 {
        self.from_tau_phi[r as usize]
    }

    pub fn partner(&self, i: u32) -> u32 {
        self.partner[i as usize]
    }

    pub fn is_positive_psi(&self, i: u32) -> bool {
        self.positive[i as usize]
    }

    /// The permutation of psi induced by the reflection in psi element `i`.
    pub fn psi_reflection_perm(&self, i: u32) -> Vec<u32> {
        let alpha = &self.psi[i as usize];
        self.psi
            .iter()
            .map(|v| {
                let img = self.reflect_u(alpha, v);
                self.psi_index[&img]
            })
            .collect()
    }

    /// The action of the i-th source simple reflection on psi, built purely
    /// on the integer side as the product of the two bundle reflections.
    pub fn source_generator_psi_perm(&self, i: usize) -> Vec<u32> {
        let a = self.psi[self.from_phi[self.source.simple(i) as usize] as usize].clone();
        let b = self.psi[self.from_tau_phi[self.source.simple(i) as usize] as usize].clone();
        self.psi
            .iter()
            .map(|v| {
                let img = self.reflect_u(&b, &self.reflect_u(&a, v));
                self.psi_index[&img]
            })
            .collect()
    }

    /// Same JSON shape as a root system document, with the bundle pairing
    /// appended.
    pub fn to_json(&self) -> serde_json::Value {
        let bundles: Vec<[u32; 2]> = (0..self.source.n_roots() as u32)
            .map(|r| [self.plain_copy(r), self.tau_copy(r)])
            .collect();
        serde_json::json!({
            "label": format!("fold({})", self.source.datum.label),
            "rank": self.lattice_rank,
            "gram": self.form,
            "roots": self.psi,
            "positive": (0..self.n_psi() as u32)
                .filter(|&i| self.is_positive_psi(i))
                .collect::<Vec<_>>(),
            "bundles": bundles,
        })
    }
}

/// The frozen projection table: for source pairing p, the four pushed
/// values ((a,b), (a,tb), (ta,b), (ta,tb)). Rows exist exactly for the
/// pairings that occur between length-2 golden roots.
fn table_row(p: GoldenInt) -> Option<[i64; 4]> {
    let g = GoldenInt::from_int;
    let rows: [(GoldenInt, [i64; 4]); 9] = [
        (ZERO, [0, 0, 0, 0]),
        (g(1), [1, 0, 0, 1]),
        (g(-1), [-1, 0, 0, -1]),
        (GoldenInt::new(-1, 1), [-1, 1, 1, 0]),  // tau - 1
        (GoldenInt::new(1, -1), [1, -1, -1, 0]), // 1 - tau
        (TAU, [0, 1, 1, 1]),
        (-TAU, [0, -1, -1, -1]),
        (g(2), [2, 0, 0, 2]),
        (g(-2), [-2, 0, 0, -2]),
    ];
    rows.iter().find(|(q, _)| *q == p).map(|(_, row)| *row)
}

/// Checks every source pair against the projection table: the golden
/// pairing takes one of the nine tabulated values, and the four integer
/// form values of the doubled copies match the table row exactly.
pub fn check_ip_table(f: &FoldedSystem) -> Certificate {
    let label = f.source.datum.label;
    let n = f.source.n_roots() as u32;
    for r in 0..n {
        for s in 0..n {
            let p = f
                .source
                .inner(&f.source.root(r).coeffs, &f.source.root(s).coeffs);
            let row = match table_row(p) {
                Some(row) => row,
                None => {
                    return Certificate::fail(
                        CheckKind::FoldTable,
                        label,
                        format!("pairing {p} of roots {r},{s} is outside the table"),
                    )
                }
            };
            let a = &f.psi[f.plain_copy(r) as usize];
            let ta = &f.psi[f.tau_copy(r) as usize];
            let b = &f.psi[f.plain_copy(s) as usize];
            let tb = &f.psi[f.tau_copy(s) as usize];
            let got = [
                f.form_value(a, b),
                f.form_value(a, tb),
                f.form_value(ta, b),
                f.form_value(ta, tb),
            ];
            if got != row {
                return Certificate::fail(
                    CheckKind::FoldTable,
                    label,
                    format!("pair ({r},{s}): expected {row:?}, got {got:?}"),
                );
            }
        }
    }
    Certificate::pass(CheckKind::FoldTable, label)
        .with_instance(format!("{} pairs", (n as usize) * (n as usize)))
}

/// Backtracking graph isomorphism of a connected simply-laced graph
/// against the catalog. Returns the label and, per catalog node index,
/// the matched input node.
fn identify_component(adj: &[Vec<bool>], nodes: &[usize]) -> Result<(TypeLabel, Vec<usize>)> {
    let k = nodes.len();
    let mut candidates: Vec<TypeLabel> = Vec::new();
    if (1..=8).contains(&k) {
        candidates.push(TypeLabel::A(k as u8));
    }
    if (4..=8).contains(&k) {
        candidates.push(TypeLabel::D(k as u8));
    }
    if (6..=8).contains(&k) {
        candidates.push(TypeLabel::E(k as u8));
    }
    let deg = |i: usize| nodes.iter().filter(|&&j| adj[i][j]).count();
    let mut input_degrees: Vec<usize> = nodes.iter().map(|&i| deg(i)).collect();
    input_degrees.sort_unstable();

    for label in candidates {
        let cat = RootSystem::new(label).expect("catalog label");
        let cat_adj: Vec<Vec<bool>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| i != j && cat.gram[(i, j)] == GoldenInt::from_int(-1))
                    .collect()
            })
            .collect();
        let mut cat_degrees: Vec<usize> = (0..k)
            .map(|i| (0..k).filter(|&j| cat_adj[i][j]).count())
            .collect();
        cat_degrees.sort_unstable();
        if cat_degrees != input_degrees {
            continue;
        }
        // map catalog node -> input node
        let mut map = vec![usize::MAX; k];
        let mut used = vec![false; k];
        fn bt(
            cat_adj: &[Vec<bool>],
            adj: &[Vec<bool>],
            nodes: &[usize],
            map: &mut [usize],
            used: &mut [bool],
            pos: usize,
        ) -> bool {
            if pos == map.len() {
                return true;
            }
            for cand in 0..map.len() {
                if used[cand] {
                    continue;
                }
                let ok = (0..pos).all(|prev| {
                    cat_adj[pos][prev] == adj[nodes[cand]][nodes[map[prev]]]
                });
                if ok {
                    map[pos] = cand;
                    used[cand] = true;
                    if bt(cat_adj, adj, nodes, map, used, pos + 1) {
                        return true;
                    }
                    used[cand] = false;
                    map[pos] = usize::MAX;
                }
            }
            false
        }
        if bt(&cat_adj, adj, nodes, &mut map, &mut used, 0) {
            return Ok((label, map.iter().map(|&c| nodes[c]).collect()));
        }
    }
    Err(Error::UnknownGraph)
}

/// Identifies the type of a simply-laced simple system given as lattice
/// vectors: validates pairwise products in {0,-1} and independence,
/// splits the graph into connected components and matches each against
/// the catalog. Returns (label, catalog-node -> input index) per
/// component.
pub fn identify_type(
    f: &FoldedSystem,
    vectors: &[Vec<i64>],
) -> Result<Vec<(TypeLabel, Vec<usize>)>> {
    let k = vectors.len();
    for v in vectors {
        if f.form_value(v, v) != 2 {
            return Err(Error::UnknownGraph);
        }
    }
    let mut adj = vec![vec![false; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            match f.form_value(&vectors[i], &vectors[j]) {
                0 => {}
                -1 => {
                    adj[i][j] = true;
                    adj[j][i] = true;
                }
                _ => return Err(Error::UnknownGraph),
            }
        }
    }
    if !int_independent(vectors) {
        return Err(Error::UnknownGraph);
    }
    let mut seen = vec![false; k];
    let mut out = Vec::new();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..k {
                if !seen[j] && adj[i][j] {
                    seen[j] = true;
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(identify_component(&adj, &comp)?);
    }
    Ok(out)
}

fn int_independent(vectors: &[Vec<i64>]) -> bool {
    if vectors.is_empty() {
        return true;
    }
    let rows = vectors.len();
    let cols = vectors[0].len();
    let mut m = GoldenMat::zero(rows, cols);
    for (i, v) in vectors.iter().enumerate() {
        for (j, &c) in v.iter().enumerate() {
            m[(i, j)] = GoldenInt::from_int(c);
        }
    }
    m.rank() == rows
}

fn golden_independent(sys: &RootSystem, roots: &[u32]) -> bool {
    if roots.is_empty() {
        return true;
    }
    let mut m = GoldenMat::zero(roots.len(), sys.rank());
    for (i, &r) in roots.iter().enumerate() {
        for (j, &c) in sys.root(r).coeffs.iter().enumerate() {
            m[(i, j)] = c;
        }
    }
    m.rank() == roots.len()
}

/// Identifies the doubled simple system and verifies the identification
/// all the way down: the catalog system of the identified type, pushed
/// through the node mapping, reproduces psi exactly.
pub fn check_fold_type(f: &FoldedSystem) -> Certificate {
    let label = f.source.datum.label;
    let expected = match label {
        TypeLabel::H4 => TypeLabel::E(8),
        TypeLabel::H3 => TypeLabel::D(6),
        TypeLabel::I5 => TypeLabel::A(4),
        _ => unreachable!("fold only accepts golden types"),
    };
    let components = match identify_type(f, &f.delta) {
        Ok(c) => c,
        Err(e) => return Certificate::fail(CheckKind::FoldType, label, format!("{e}")),
    };
    if components.len() != 1 {
        return Certificate::fail(
            CheckKind::FoldType,
            label,
            format!("doubled simple system splits into {} components", components.len()),
        );
    }
    let (found, mapping) = &components[0];
    if *found != expected {
        return Certificate::fail(
            CheckKind::FoldType,
            label,
            format!("identified {found}, expected {expected}"),
        );
    }
    // base change: catalog roots -> lattice vectors -> exact set equality
    let cat = RootSystem::new(expected).expect("catalog label");
    let mut image: Vec<Vec<i64>> = cat
        .roots()
        .iter()
        .map(|root| {
            let mut v = vec![0i64; f.lattice_rank];
            for (k, c) in root.coeffs.iter().enumerate() {
                debug_assert!(c.is_int());
                for (t, &d) in f.delta[mapping[k]].iter().enumerate() {
                    v[t] += c.a * d;
                }
            }
            v
        })
        .collect();
    image.sort();
    if image != f.psi {
        return Certificate::fail(
            CheckKind::FoldType,
            label,
            format!("{expected} root set does not map onto psi"),
        );
    }
    Certificate::pass(CheckKind::FoldType, label)
        .with_instance(format!("{expected}, |psi|={}", f.n_psi()))
}

/// For every source root and every lattice basis vector: the source
/// reflection pushed to the lattice equals the product of the two bundle
/// reflections, in both orders.
pub fn check_reflection_factorization(f: &FoldedSystem) -> Certificate {
    let label = f.source.datum.label;
    let n = f.source.rank();
    for r in 0..f.source.n_roots() as u32 {
        let a = f.psi[f.plain_copy(r) as usize].clone();
        let ta = f.psi[f.tau_copy(r) as usize].clone();
        for i in 0..n {
            // lattice basis vectors are alpha_i and tau*alpha_i; their
            // source-side images are computed in golden arithmetic
            let mut basis_golden = vec![ZERO; n];
            basis_golden[i] = GoldenInt::from_int(1);
            for tau_copy in [false, true] {
                let golden = if tau_copy {
                    tau_times(&basis_golden)
                } else {
                    basis_golden.clone()
                };
                let u = iota(&golden);
                let source_image = iota(&f.source.reflect_vec(r, &golden));
                let via_pair = f.reflect_u(&ta, &f.reflect_u(&a, &u));
                let via_pair_swapped = f.reflect_u(&a, &f.reflect_u(&ta, &u));
                if via_pair != source_image || via_pair_swapped != source_image {
                    return Certificate::fail(
                        CheckKind::FoldReflections,
                        label,
                        format!("root {r}, basis ({i}, tau={tau_copy}): factorization mismatch"),
                    );
                }
            }
        }
    }
    Certificate::pass(CheckKind::FoldReflections, label)
        .with_instance(format!("{} roots x {} basis vectors", f.source.n_roots(), 2 * n))
}

/// Enumerates the source group (breadth-first over the simple generators,
/// up to `max_len`) while composing, in lockstep, the permutation each
/// element induces on psi via the integer-side bundle reflections. For
/// every element the psi inversion count must be exactly twice the source
/// inversion count.
pub fn check_length_doubling(f: &FoldedSystem, max_len: usize) -> Certificate {
    let label = f.source.datum.label;
    let n = f.source.rank();
    let n_roots = f.source.n_roots();

    let phi_gens: Vec<Vec<u32>> = (0..n)
        .map(|i| (0..n_roots as u32).map(|r| f.source.s_apply(i, r)).collect())
        .collect();
    let psi_gens: Vec<Vec<u32>> = (0..n).map(|i| f.source_generator_psi_perm(i)).collect();

    let phi_id: Vec<u32> = (0..n_roots as u32).collect();
    let psi_id: Vec<u32> = (0..f.n_psi() as u32).collect();

    let inv_phi = |perm: &[u32]| -> usize {
        (0..n_roots as u32)
            .filter(|&r| f.source.is_positive(r) && !f.source.is_positive(perm[r as usize]))
            .count()
    };
    let inv_psi = |perm: &[u32]| -> usize {
        (0..f.n_psi() as u32)
            .filter(|&i| f.is_positive_psi(i) && !f.is_positive_psi(perm[i as usize]))
            .count()
    };

    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(phi_id.clone());
    let mut queue = VecDeque::new();
    queue.push_back((phi_id, psi_id, 0usize));
    let mut checked = 0usize;
    while let Some((phi_perm, psi_perm, depth)) = queue.pop_front() {
        let l = inv_phi(&phi_perm);
        let l2 = inv_psi(&psi_perm);
        if l2 != 2 * l {
            return Certificate::fail(
                CheckKind::FoldLength,
                label,
                format!("element at depth {depth} has source length {l} but doubled length {l2}"),
            );
        }
        checked += 1;
        if depth == max_len {
            continue;
        }
        for i in 0..n {
            let next_phi: Vec<u32> = phi_perm
                .iter()
                .map(|&r| phi_gens[i][r as usize])
                .collect();
            if seen.contains(&next_phi) {
                continue;
            }
            let next_psi: Vec<u32> = psi_perm
                .iter()
                .map(|&x| psi_gens[i][x as usize])
                .collect();
            seen.insert(next_phi.clone());
            queue.push_back((next_phi, next_psi, depth + 1));
        }
    }
    Certificate::pass(CheckKind::FoldLength, label)
        .with_instance(format!("{checked} group elements"))
}

/// Source roots are compatible when their pairing is 0, -1 or -tau: the
/// simple-subsystem criterion for length-2 golden roots.
fn source_compatible(sys: &RootSystem, r: u32, s: u32) -> bool {
    let p = sys.inner(&sys.root(r).coeffs, &sys.root(s).coeffs);
    p == ZERO || p == GoldenInt::from_int(-1) || p == -TAU
}

/// All simple subsystems of the source of size <= max_size, as sorted
/// index sets (the empty set included): cliques of the compatibility
/// graph that are independent over the golden field.
pub fn simple_subsystems(sys: &RootSystem, max_size: usize) -> Vec<Vec<u32>> {
    let n = sys.n_roots() as u32;
    let mut out = vec![vec![]];
    let mut stack: Vec<Vec<u32>> = (0..n).map(|r| vec![r]).collect();
    stack.reverse();
    while let Some(clique) = stack.pop() {
        if !golden_independent(sys, &clique) {
            continue;
        }
        out.push(clique.clone());
        if clique.len() == max_size {
            continue;
        }
        let last = *clique.last().expect("nonempty clique");
        for cand in last + 1..n {
            if clique.iter().all(|&r| source_compatible(sys, r, cand)) {
                let mut next = clique.clone();
                next.push(cand);
                stack.push(next);
            }
        }
    }
    out.sort();
    out
}

/// Bundle-union simple subsystems of psi with at most `max_bundles`
/// bundles, enumerated purely on the integer side: a set of bundles whose
/// union has all pairwise form values in {0,-1} and is independent.
/// Returned as sorted psi index sets.
fn bundle_union_subsystems(f: &FoldedSystem, max_bundles: usize) -> Vec<Vec<u32>> {
    let n = f.source.n_roots() as u32;
    let compatible = |r: u32, s: u32| -> bool {
        let pairs = [
            (f.plain_copy(r), f.plain_copy(s)),
            (f.plain_copy(r), f.tau_copy(s)),
            (f.tau_copy(r), f.plain_copy(s)),
            (f.tau_copy(r), f.tau_copy(s)),
        ];
        pairs.iter().all(|&(x, y)| {
            matches!(
                f.form_value(&f.psi[x as usize], &f.psi[y as usize]),
                0 | -1
            )
        })
    };
    let union_vectors = |bundles: &[u32]| -> Vec<Vec<i64>> {
        bundles
            .iter()
            .flat_map(|&r| {
                [
                    f.psi[f.plain_copy(r) as usize].clone(),
                    f.psi[f.tau_copy(r) as usize].clone(),
                ]
            })
            .collect()
    };

    let mut out = vec![vec![]];
    let mut stack: Vec<Vec<u32>> = (0..n).map(|r| vec![r]).collect();
    stack.reverse();
    while let Some(bundles) = stack.pop() {
        // within-bundle products must also be simply laced
        let vecs = union_vectors(&bundles);
        let ok_within = bundles.iter().all(|&r| {
            f.form_value(
                &f.psi[f.plain_copy(r) as usize],
                &f.psi[f.tau_copy(r) as usize],
            ) == 0
        });
        if !ok_within || !int_independent(&vecs) {
            continue;
        }
        let mut indices: Vec<u32> = bundles
            .iter()
            .flat_map(|&r| [f.plain_copy(r), f.tau_copy(r)])
            .collect();
        indices.sort_unstable();
        out.push(indices);
        if bundles.len() == max_bundles {
            continue;
        }
        let last = *bundles.last().expect("nonempty bundle set");
        for cand in last + 1..n {
            if bundles.iter().all(|&r| compatible(r, cand)) {
                let mut next = bundles.clone();
                next.push(cand);
                stack.push(next);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn psi_image_of_subsystem(f: &FoldedSystem, gamma: &[u32]) -> Vec<u32> {
    let mut indices: Vec<u32> = gamma
        .iter()
        .flat_map(|&r| [f.plain_copy(r), f.tau_copy(r)])
        .collect();
    indices.sort_unstable();
    indices
}

/// The doubling map on simple subsystems is a bijection onto the
/// bundle-union simple subsystems: every image is one, and every
/// bundle-union subsystem (enumerated independently on the integer side)
/// is an image. Equivariance under the source group is spot-checked on
/// generator words.
pub fn check_phi_bijection(f: &FoldedSystem, max_size: usize) -> Certificate {
    let label = f.source.datum.label;
    assert!(max_size <= f.source.rank());
    let source_side = simple_subsystems(&f.source, max_size);
    let mut images: Vec<Vec<u32>> = source_side
        .iter()
        .map(|gamma| psi_image_of_subsystem(f, gamma))
        .collect();
    images.sort();
    // injectivity: distinct subsystems have distinct images
    let dedup_len = {
        let mut copy = images.clone();
        copy.dedup();
        copy.len()
    };
    if dedup_len != images.len() {
        return Certificate::fail(CheckKind::FoldPhi, label, "doubling map is not injective");
    }
    let targets = bundle_union_subsystems(f, max_size);
    if images != targets {
        return Certificate::fail(
            CheckKind::FoldPhi,
            label,
            format!(
                "image count {} differs from bundle-union subsystem count {}",
                images.len(),
                targets.len()
            ),
        );
    }

    // equivariance on generator words: w(Gamma) doubles to the psi image
    // of Gamma moved by the integer-side action of w
    let n = f.source.rank();
    let mut words: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    words.push((0..n).collect());
    words.push((0..n).rev().collect());
    for word in words {
        let mut phi_perm: Vec<u32> = (0..f.source.n_roots() as u32).collect();
        let mut psi_perm: Vec<u32> = (0..f.n_psi() as u32).collect();
        for &i in &word {
            let pg: Vec<u32> = (0..f.source.n_roots() as u32)
                .map(|r| f.source.s_apply(i, r))
                .collect();
            let sg = f.source_generator_psi_perm(i);
            phi_perm = phi_perm.iter().map(|&r| pg[r as usize]).collect();
            psi_perm = psi_perm.iter().map(|&x| sg[x as usize]).collect();
        }
        for gamma in source_side.iter().step_by(7) {
            let moved: Vec<u32> = gamma.iter().map(|&r| phi_perm[r as usize]).collect();
            let mut lhs = psi_image_of_subsystem(f, &moved);
            lhs.sort_unstable();
            let mut rhs: Vec<u32> = psi_image_of_subsystem(f, gamma)
                .iter()
                .map(|&x| psi_perm[x as usize])
                .collect();
            rhs.sort_unstable();
            if lhs != rhs {
                return Certificate::fail(
                    CheckKind::FoldPhi,
                    label,
                    format!("equivariance fails for word {word:?}"),
                );
            }
        }
    }
    Certificate::pass(CheckKind::FoldPhi, label)
        .with_instance(format!("{} subsystems of size <= {max_size}", source_side.len()))
}

/// Chamber equivalence: a source root pairs nonnegatively with every
/// member of a simple subsystem exactly when its tau copy pairs
/// nonnegatively with every member of the doubled subsystem. The left
/// side is a golden sign test, the right side pure integer arithmetic.
pub fn check_chamber_equivalence(f: &FoldedSystem, max_size: usize) -> Certificate {
    let label = f.source.datum.label;
    let subsystems = simple_subsystems(&f.source, max_size);
    let mut checked = 0usize;
    for gamma in &subsystems {
        let doubled = psi_image_of_subsystem(f, gamma);
        for alpha in 0..f.source.n_roots() as u32 {
            let lhs = gamma.iter().all(|&g| {
                f.source
                    .inner(&f.source.root(alpha).coeffs, &f.source.root(g).coeffs)
                    .sign()
                    >= 0
            });
            let ta = &f.psi[f.tau_copy(alpha) as usize];
            let rhs = doubled
                .iter()
                .all(|&d| f.form_value(ta, &f.psi[d as usize]) >= 0);
            if lhs != rhs {
                return Certificate::fail(
                    CheckKind::FoldChamber,
                    label,
                    format!(
                        "root {:?} vs subsystem {gamma:?}: golden {lhs}, integer {rhs}",
                        f.source.root(alpha)
                    ),
                );
            }
            checked += 1;
        }
    }
    Certificate::pass(CheckKind::FoldChamber, label)
        .with_instance(format!("{checked} (subsystem, root) pairs"))
}

/// Reflection closure of a set of source roots, inside the source system.
fn source_closure(sys: &RootSystem, gens: &[u32]) -> Vec<u32> {
    let mut in_set = vec![false; sys.n_roots()];
    let mut members: Vec<u32> = Vec::new();
    for &g in gens {
        if !in_set[g as usize] {
            in_set[g as usize] = true;
            members.push(g);
        }
    }
    loop {
        let mut added = false;
        let snapshot = members.clone();
        for &x in &snapshot {
            let perm = sys.reflection_perm(x);
            for &y in &snapshot {
                let img = perm[y as usize];
                if !in_set[img as usize] {
                    in_set[img as usize] = true;
                    members.push(img);
                    added = true;
                }
            }
        }
        if !added {
            members.sort_unstable();
            return members;
        }
    }
}

/// Reflection closure of a set of psi elements, on the integer side.
fn psi_closure(f: &FoldedSystem, gens: &[u32]) -> Vec<u32> {
    let mut in_set = vec![false; f.n_psi()];
    let mut members: Vec<u32> = Vec::new();
    for &g in gens {
        if !in_set[g as usize] {
            in_set[g as usize] = true;
            members.push(g);
        }
    }
    loop {
        let mut added = false;
        let snapshot = members.clone();
        for &x in &snapshot {
            let alpha = f.psi[x as usize].clone();
            for &y in &snapshot {
                let img = f.reflect_u(&alpha, &f.psi[y as usize]);
                let idx = f.psi_idx(&img).expect("psi is closed under its reflections");
                if !in_set[idx as usize] {
                    in_set[idx as usize] = true;
                    members.push(idx);
                    added = true;
                }
            }
        }
        if !added {
            members.sort_unstable();
            return members;
        }
    }
}

/// Round-trip of the closure correspondence on sampled generator sets:
/// the doubled image of a closed source subset is closed on the integer
/// side and a union of bundles, and conversely a closed bundle union
/// intersects the source copy in a closed set that doubles back to it.
pub fn check_phi_prime(f: &FoldedSystem, samples: usize, seed: u64) -> Certificate {
    let label = f.source.datum.label;
    let n = f.source.n_roots() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // deterministic edge cases first: full system and a single root
    let mut generator_sets: Vec<Vec<u32>> = vec![
        (0..n).collect(),
        vec![0],
    ];
    for _ in 0..samples {
        let k = rng.gen_range(1..=4usize);
        let gens: Vec<u32> = (0..k).map(|_| rng.gen_range(0..n)).collect();
        generator_sets.push(gens);
    }

    for gens in &generator_sets {
        let lambda = source_closure(&f.source, gens);
        let mut doubled: Vec<u32> = lambda
            .iter()
            .flat_map(|&r| [f.plain_copy(r), f.tau_copy(r)])
            .collect();
        doubled.sort_unstable();
        // closed on the integer side
        let reclosed = psi_closure(f, &doubled);
        if reclosed != doubled {
            return Certificate::fail(
                CheckKind::FoldPhiPrime,
                label,
                format!("doubled closure of {gens:?} is not closed in psi"),
            );
        }
        // union of bundles
        if doubled
            .iter()
            .any(|&x| doubled.binary_search(&f.partner(x)).is_err())
        {
            return Certificate::fail(
                CheckKind::FoldPhiPrime,
                label,
                format!("doubled closure of {gens:?} is not a bundle union"),
            );
        }
        // converse: intersect with the source copy and double back
        let back: Vec<u32> = (0..n).filter(|&r| doubled.binary_search(&f.plain_copy(r)).is_ok()).collect();
        if source_closure(&f.source, &back) != back {
            return Certificate::fail(
                CheckKind::FoldPhiPrime,
                label,
                format!("source intersection of the closure of {gens:?} is not closed"),
            );
        }
        let mut redoubled: Vec<u32> = back
            .iter()
            .flat_map(|&r| [f.plain_copy(r), f.tau_copy(r)])
            .collect();
        redoubled.sort_unstable();
        if redoubled != doubled {
            return Certificate::fail(
                CheckKind::FoldPhiPrime,
                label,
                format!("round trip differs for {gens:?}"),
            );
        }
    }

    // independently sampled bundle unions, closed on the integer side
    for _ in 0..samples / 4 {
        let k = rng.gen_range(1..=3usize);
        let gens: Vec<u32> = (0..k)
            .flat_map(|_| {
                let r = rng.gen_range(0..n);
                [f.plain_copy(r), f.tau_copy(r)]
            })
            .collect();
        let closed = psi_closure(f, &gens);
        let bundle_union = closed
            .iter()
            .all(|&x| closed.binary_search(&f.partner(x)).is_ok());
        if !bundle_union {
            // closures of bundle generators stay bundle unions
            return Certificate::fail(
                CheckKind::FoldPhiPrime,
                label,
                "closure of bundle generators is not a bundle union".to_string(),
            );
        }
        let back: Vec<u32> = (0..n)
            .filter(|&r| closed.binary_search(&f.plain_copy(r)).is_ok())
            .collect();
        let mut redoubled: Vec<u32> = back
            .iter()
            .flat_map(|&r| [f.plain_copy(r), f.tau_copy(r)])
            .collect();
        redoubled.sort_unstable();
        if source_closure(&f.source, &back) != back || redoubled != closed {
            return Certificate::fail(
                CheckKind::FoldPhiPrime,
                label,
                "integer-side closure does not round-trip".to_string(),
            );
        }
    }

    Certificate::pass(CheckKind::FoldPhiPrime, label)
        .with_instance(format!("{} generator sets", generator_sets.len()))
}

/// The chamber transfer: for a parabolic subset J of the source and roots
/// alpha, beta outside the parabolic subsystem, both J-dominant, with
/// beta - alpha supported on Pi_J, the tau copies land outside the
/// doubled parabolic subsystem of J' = J u tau*J and are J'-dominant.
/// Returns a witness on violation.
pub fn chamber_transfer_violation(f: &FoldedSystem, j: Parabolic) -> Option<String> {
    let sys = &f.source;
    let n = sys.rank();
    let in_parab = |r: u32| sys.root(r).support().iter().all(|&i| j.contains(i));
    let dominant = |r: u32| {
        j.iter()
            .take_while(|&i| i < n)
            .all(|i| sys.pairing(r, i).sign() >= 0)
    };
    // J' as lattice coordinates: both copies of each J index
    let jprime: Vec<usize> = j
        .iter()
        .take_while(|&i| i < n)
        .flat_map(|i| [i, n + i])
        .collect();
    for alpha in 0..sys.n_roots() as u32 {
        if in_parab(alpha) || !dominant(alpha) {
            continue;
        }
        for beta in 0..sys.n_roots() as u32 {
            if in_parab(beta) || !dominant(beta) {
                continue;
            }
            let supported = (0..n)
                .all(|i| j.contains(i) || sys.root(alpha).coeffs[i] == sys.root(beta).coeffs[i]);
            if !supported {
                continue;
            }
            for r in [alpha, beta] {
                let t = &f.psi[f.tau_copy(r) as usize];
                let outside = (0..f.lattice_rank).any(|i| !jprime.contains(&i) && t[i] != 0);
                if !outside {
                    return Some(format!(
                        "tau copy of root {r} lies inside the doubled parabolic subsystem"
                    ));
                }
                for &i in &jprime {
                    let pairing: i64 = (0..f.lattice_rank).map(|k| t[k] * f.form[k][i]).sum();
                    if pairing < 0 {
                        return Some(format!(
                            "tau copy of root {r} pairs negatively with doubled simple {i}"
                        ));
                    }
                }
            }
        }
    }
    None
}
