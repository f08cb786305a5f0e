//! Simply-laced root systems with dense root indexing.
//!
//! Roots are stored as integer coefficient vectors over the simple roots.
//! Positive roots occupy indices `0..n_pos` (label `i + 1`), their negatives
//! occupy `n_pos..2 * n_pos` (label `-(i + 1)`), so negation is index
//! arithmetic and every Weyl element or diagram symmetry is a plain
//! permutation of indices ([`RootMap`]).
//!
//! Coroots are identified with roots (all roots have the same length), so a
//! cocharacter is an integer vector over the simple coroots and
//! `<ζ, χ> = Σ ζ_i χ_j C[i][j]` with `C[i][j] = <α_i, α_j∨>`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("vector {0:?} is not a root of {1}")]
    NotARoot(Vec<i32>, String),
    #[error("unsupported root system {0}")]
    Unsupported(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("no root with label {0}")]
    BadLabel(i32),
    #[error("unknown simple root name `{0}`")]
    UnknownSimple(String),
    #[error("cannot parse `{0}` as a root or cocharacter expression")]
    Parse(String),
    #[error("simple roots {given:?} are not the simple roots orthogonal to the cocharacter (expected {expected:?})")]
    LeviMismatch {
        given: Vec<String>,
        expected: Vec<String>,
    },
    #[error("internal: {0}")]
    Internal(String),
}

/// Dynkin type of a supported system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dynkin {
    A(usize),
    D4,
}

impl fmt::Display for Dynkin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dynkin::A(n) => write!(f, "A{n}"),
            Dynkin::D4 => write!(f, "D4"),
        }
    }
}

/// Index of a root in its ambient [`RootSystem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub(crate) u16);

impl Root {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Integer vector over the simple coroots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cochar(pub Vec<i32>);

impl Cochar {
    pub fn zero(rank: usize) -> Self {
        Cochar(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, k: i32) -> Cochar {
        Cochar(self.0.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &Cochar) -> Cochar {
        Cochar(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Cochar {
        self.scaled(-1)
    }
}

// Positive roots of D4 in label order, coefficients over (α, β, γ, δ) with β
// the branch node. Labels 5..=11 were pinned by exhaustive search against the
// n_α σ cycle structure; see `d4_label_table_is_forced` below.
const D4_LABELS: [[i32; 4]; 12] = [
    [1, 0, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [0, 1, 0, 0],
    [1, 1, 0, 0],
    [0, 1, 1, 0],
    [0, 1, 0, 1],
    [1, 1, 1, 0],
    [1, 1, 0, 1],
    [0, 1, 1, 1],
    [1, 1, 1, 1],
    [1, 2, 1, 1],
];

const SIMPLE_NAMES: [&str; 4] = ["a", "b", "g", "d"];
const GREEK_NAMES: [&str; 4] = ["α", "β", "γ", "δ"];

#[derive(Debug)]
pub struct RootSystem {
    kind: Dynkin,
    cartan: Vec<Vec<i32>>,
    roots: Vec<Vec<i32>>,
    lookup: HashMap<Vec<i32>, Root>,
    /// Designated diagram symmetry on simple indices (identity for A1).
    sigma: Vec<usize>,
    weyl: OnceLock<Vec<RootMap>>,
    automorphisms: OnceLock<Vec<RootMap>>,
}

impl RootSystem {
    pub fn new(kind: Dynkin) -> Result<Self, RootError> {
        let (cartan, positive, sigma) = match kind {
            Dynkin::A(n) if (1..=4).contains(&n) => {
                let cartan = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| match i.abs_diff(j) {
                                0 => 2,
                                1 => -1,
                                _ => 0,
                            })
                            .collect()
                    })
                    .collect::<Vec<Vec<i32>>>();
                let mut positive = orbit_positive_roots(&cartan);
                positive.sort_by(|a, b| {
                    let ha: i32 = a.iter().sum();
                    let hb: i32 = b.iter().sum();
                    ha.cmp(&hb).then_with(|| b.cmp(a))
                });
                (cartan, positive, (0..n).rev().collect())
            }
            Dynkin::D4 => {
                let cartan = vec![
                    vec![2, -1, 0, 0],
                    vec![-1, 2, -1, -1],
                    vec![0, -1, 2, 0],
                    vec![0, -1, 0, 2],
                ];
                let positive = D4_LABELS.iter().map(|r| r.to_vec()).collect();
                (cartan, positive, vec![2, 1, 3, 0])
            }
            other => return Err(RootError::Unsupported(other.to_string())),
        };
        let mut roots = positive.clone();
        roots.extend(
            positive
                .iter()
                .map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()),
        );
        let lookup = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), Root(i as u16)))
            .collect();
        let rs = RootSystem {
            kind,
            cartan,
            roots,
            lookup,
            sigma,
            weyl: OnceLock::new(),
            automorphisms: OnceLock::new(),
        };
        debug_assert_eq!(orbit_positive_roots(&rs.cartan).len(), rs.n_pos());
        Ok(rs)
    }

    /// Parses `a1`..`a4` or `d4`.
    pub fn from_name(name: &str) -> Result<Self, RootError> {
        let lower = name.trim().to_ascii_lowercase();
        match lower.as_str() {
            "d4" => Self::new(Dynkin::D4),
            s if s.starts_with('a') => {
                let n: usize = s[1..]
                    .parse()
                    .map_err(|_| RootError::Unsupported(name.to_string()))?;
                Self::new(Dynkin::A(n))
            }
            _ => Err(RootError::Unsupported(name.to_string())),
        }
    }

    pub fn kind(&self) -> Dynkin {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn n_pos(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> impl Iterator<Item = Root> + '_ {
        (0..self.roots.len()).map(|i| Root(i as u16))
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = Root> + '_ {
        (0..self.n_pos()).map(|i| Root(i as u16))
    }

    pub fn coeffs(&self, r: Root) -> &[i32] {
        &self.roots[r.index()]
    }

    pub fn is_positive(&self, r: Root) -> bool {
        r.index() < self.n_pos()
    }

    pub fn height(&self, r: Root) -> i32 {
        self.coeffs(r).iter().sum()
    }

    pub fn neg(&self, r: Root) -> Root {
        let n = self.n_pos();
        let i = r.index();
        Root(if i < n { i + n } else { i - n } as u16)
    }

    pub fn simple(&self, i: usize) -> Root {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        self.lookup[&v]
    }

    pub fn simple_index(&self, r: Root) -> Option<usize> {
        let c = self.coeffs(r);
        if c.iter().sum::<i32>() == 1 && c.iter().all(|&x| x >= 0) {
            c.iter().position(|&x| x == 1)
        } else {
            None
        }
    }

    pub fn simple_name(&self, i: usize) -> &'static str {
        SIMPLE_NAMES[i]
    }

    pub fn simple_index_by_name(&self, name: &str) -> Result<usize, RootError> {
        SIMPLE_NAMES
            .iter()
            .zip(GREEK_NAMES.iter())
            .take(self.rank())
            .position(|(a, g)| *a == name || *g == name)
            .ok_or_else(|| RootError::UnknownSimple(name.to_string()))
    }

    pub fn root_of(&self, coeffs: &[i32]) -> Result<Root, RootError> {
        if coeffs.len() != self.rank() {
            return Err(RootError::Dimension {
                expected: self.rank(),
                got: coeffs.len(),
            });
        }
        self.lookup
            .get(coeffs)
            .copied()
            .ok_or_else(|| RootError::NotARoot(coeffs.to_vec(), self.kind.to_string()))
    }

    pub fn try_root(&self, coeffs: &[i32]) -> Option<Root> {
        self.lookup.get(coeffs).copied()
    }

    /// Signed label: positive roots are `1..=n_pos`, negatives `-1..=-n_pos`.
    pub fn label(&self, r: Root) -> i32 {
        let n = self.n_pos();
        let i = r.index();
        if i < n {
            i as i32 + 1
        } else {
            -((i - n) as i32 + 1)
        }
    }

    pub fn by_label(&self, label: i32) -> Result<Root, RootError> {
        let n = self.n_pos() as i32;
        match label {
            l if (1..=n).contains(&l) => Ok(Root((l - 1) as u16)),
            l if (-n..=-1).contains(&l) => Ok(Root((n - l - 1) as u16)),
            _ => Err(RootError::BadLabel(label)),
        }
    }

    /// Sum of two roots if it is a root.
    pub fn sum(&self, a: Root, b: Root) -> Option<Root> {
        let v: Vec<i32> = self
            .coeffs(a)
            .iter()
            .zip(self.coeffs(b))
            .map(|(x, y)| x + y)
            .collect();
        self.try_root(&v)
    }

    /// `<v, χ>` for an arbitrary integer vector `v` over the simple roots.
    pub fn pair_vec(&self, v: &[i32], chi: &Cochar) -> i32 {
        let mut s = 0;
        for (i, vi) in v.iter().enumerate() {
            if *vi == 0 {
                continue;
            }
            for (j, cj) in chi.0.iter().enumerate() {
                s += vi * cj * self.cartan[i][j];
            }
        }
        s
    }

    pub fn pairing(&self, r: Root, chi: &Cochar) -> i32 {
        self.pair_vec(self.coeffs(r), chi)
    }

    /// Checked pairing for a raw coefficient vector.
    pub fn pairing_checked(&self, zeta: &[i32], chi: &Cochar) -> Result<i32, RootError> {
        let r = self.root_of(zeta)?;
        if chi.0.len() != self.rank() {
            return Err(RootError::Dimension {
                expected: self.rank(),
                got: chi.0.len(),
            });
        }
        Ok(self.pairing(r, chi))
    }

    pub fn coroot(&self, r: Root) -> Cochar {
        Cochar(self.coeffs(r).to_vec())
    }

    /// `s_ξ·ζ = ζ − <ζ, ξ∨> ξ`.
    pub fn reflect(&self, xi: Root, zeta: Root) -> Root {
        let p = self.pairing(zeta, &self.coroot(xi));
        let v: Vec<i32> = self
            .coeffs(zeta)
            .iter()
            .zip(self.coeffs(xi))
            .map(|(z, x)| z - p * x)
            .collect();
        self.lookup[&v]
    }

    pub fn reflection(&self, xi: Root) -> RootMap {
        RootMap {
            images: self.roots().map(|z| self.reflect(xi, z)).collect(),
        }
    }

    /// Linear extension of a permutation of the simple roots. Returns `None`
    /// if the permutation is not a diagram symmetry.
    pub fn diagram_map(&self, perm: &[usize]) -> Option<RootMap> {
        let n = self.rank();
        if perm.len() != n {
            return None;
        }
        for i in 0..n {
            for j in 0..n {
                if self.cartan[perm[i]][perm[j]] != self.cartan[i][j] {
                    return None;
                }
            }
        }
        let images = self
            .roots
            .iter()
            .map(|v| {
                let mut w = vec![0; n];
                for (i, c) in v.iter().enumerate() {
                    w[perm[i]] += c;
                }
                self.try_root(&w)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(RootMap { images })
    }

    /// The designated graph automorphism σ (triality α→γ→δ→α for D4, the
    /// flip for A_n).
    pub fn sigma(&self) -> RootMap {
        self.diagram_map(&self.sigma).expect("designated symmetry")
    }

    pub fn sigma_perm(&self) -> &[usize] {
        &self.sigma
    }

    pub fn sigma_order(&self) -> u8 {
        let mut k = 1;
        let mut p: Vec<usize> = self.sigma.clone();
        while p.iter().enumerate().any(|(i, &x)| i != x) {
            p = p.iter().map(|&x| self.sigma[x]).collect();
            k += 1;
        }
        k
    }

    pub fn sigma_power(&self, k: i32) -> RootMap {
        let ord = self.sigma_order() as i32;
        let k = k.rem_euclid(ord);
        let s = self.sigma();
        let mut m = RootMap::identity(self.len());
        for _ in 0..k {
            m = s.compose(&m);
        }
        m
    }

    /// All permutations of the simple roots preserving the Cartan matrix.
    pub fn diagram_symmetries(&self) -> Vec<RootMap> {
        permutations(self.rank())
            .into_iter()
            .filter_map(|p| self.diagram_map(&p))
            .collect()
    }

    /// The Weyl group, enumerated once by closure under simple reflections.
    pub fn weyl_group(&self) -> &[RootMap] {
        self.weyl.get_or_init(|| {
            let gens: Vec<RootMap> = (0..self.rank())
                .map(|i| self.reflection(self.simple(i)))
                .collect();
            closure(RootMap::identity(self.len()), &gens)
        })
    }

    /// Weyl group extended by all diagram symmetries.
    pub fn automorphism_group(&self) -> &[RootMap] {
        self.automorphisms.get_or_init(|| {
            let mut gens: Vec<RootMap> = (0..self.rank())
                .map(|i| self.reflection(self.simple(i)))
                .collect();
            gens.extend(self.diagram_symmetries());
            closure(RootMap::identity(self.len()), &gens)
        })
    }

    /// Integer matrix of a root map in the simple-root basis (columns are the
    /// images of the simple roots).
    pub fn matrix_of(&self, m: &RootMap) -> Vec<Vec<i32>> {
        let n = self.rank();
        let mut mat = vec![vec![0; n]; n];
        for j in 0..n {
            let img = self.coeffs(m.apply(self.simple(j)));
            for i in 0..n {
                mat[i][j] = img[i];
            }
        }
        mat
    }

    /// Action on cocharacters. Coroots are identified with roots, and every
    /// map built here preserves the symmetric form, so the dual action uses
    /// the same matrix.
    pub fn act_cochar(&self, m: &RootMap, chi: &Cochar) -> Cochar {
        let mat = self.matrix_of(m);
        Cochar(
            (0..self.rank())
                .map(|i| (0..self.rank()).map(|j| mat[i][j] * chi.0[j]).sum())
                .collect(),
        )
    }

    pub fn diagram_act(&self, sigma: &RootMap, zeta: Root) -> Root {
        sigma.apply(zeta)
    }

    /// Evaluates a word in simple reflections / diagram symmetries as a group
    /// product; the rightmost letter acts first.
    pub fn word_map(&self, word: &[WeylLetter]) -> RootMap {
        let mut m = RootMap::identity(self.len());
        for letter in word {
            let g = match letter {
                WeylLetter::Reflect(r) => self.reflection(*r),
                WeylLetter::Sigma(k) => self.sigma_power(*k),
            };
            m = m.compose(&g);
        }
        m
    }

    pub fn weyl_act(&self, word: &[WeylLetter], zeta: Root) -> Root {
        word.iter().rev().fold(zeta, |z, letter| match letter {
            WeylLetter::Reflect(r) => self.reflect(*r, z),
            WeylLetter::Sigma(k) => self.sigma_power(*k).apply(z),
        })
    }

    /// Roots of the subsystem generated by the given simple roots.
    pub fn subsystem_roots(&self, simples: &[usize]) -> Vec<Root> {
        self.roots()
            .filter(|&r| {
                self.coeffs(r)
                    .iter()
                    .enumerate()
                    .all(|(i, &c)| c == 0 || simples.contains(&i))
            })
            .collect()
    }

    /// Longest element of the parabolic subgroup generated by `simples`,
    /// returned with a reduced word (indices of simple reflections, leftmost
    /// first).
    pub fn longest_element_word(&self, simples: &[usize]) -> (RootMap, Vec<usize>) {
        let mut w = RootMap::identity(self.len());
        let mut word = Vec::new();
        loop {
            let next = simples
                .iter()
                .copied()
                .find(|&j| self.is_positive(w.apply(self.simple(j))));
            match next {
                Some(j) => {
                    w = w.compose(&self.reflection(self.simple(j)));
                    word.push(j);
                }
                None => return (w, word),
            }
        }
    }

    pub fn longest_element(&self, simples: &[usize]) -> RootMap {
        self.longest_element_word(simples).0
    }

    /// w₀ of the subsystem together with the diagram symmetry σ_L of the
    /// subsystem needed so that `w₀ ∘ σ_L = −1` on it.
    pub fn minus_one_realization(&self, simples: &[usize]) -> Result<MinusOne, RootError> {
        let w0 = self.longest_element(simples);
        let domain = self.subsystem_roots(simples);
        let negates = domain.iter().all(|&r| w0.apply(r) == self.neg(r));
        if negates {
            let composite = RestrictedMap::restrict(&w0, &domain);
            return Ok(MinusOne {
                w0,
                sigma_l: None,
                composite,
            });
        }
        // w₀(α_j) = −α_{π(j)}; σ_L is the linear extension of π on Ψ(L).
        let mut perm = HashMap::new();
        for &j in simples {
            let img = self.neg(w0.apply(self.simple(j)));
            let k = self.simple_index(img).ok_or_else(|| {
                RootError::Internal("w0 does not send simple roots to negative simple roots".into())
            })?;
            perm.insert(j, k);
        }
        let n = self.rank();
        let images = domain
            .iter()
            .map(|&r| {
                let mut v = vec![0; n];
                for (i, &c) in self.coeffs(r).iter().enumerate() {
                    if c != 0 {
                        v[perm[&i]] += c;
                    }
                }
                self.root_of(&v)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let sigma_l = RestrictedMap {
            domain: domain.clone(),
            images,
        };
        let composite = RestrictedMap {
            domain: domain.clone(),
            images: sigma_l.images.iter().map(|&r| w0.apply(r)).collect(),
        };
        if !domain
            .iter()
            .zip(&composite.images)
            .all(|(&r, &img)| img == self.neg(r))
        {
            return Err(RootError::Internal(
                "no diagram symmetry turns w0 into -1 on the subsystem".into(),
            ));
        }
        Ok(MinusOne {
            w0,
            sigma_l: Some(sigma_l),
            composite,
        })
    }

    /// Rational basis of the cocharacters orthogonal to every root in
    /// `domain` (the central directions of the Levi it spans).
    pub fn orthogonal_cochars(&self, domain: &[Root]) -> Vec<Cochar> {
        let rows: Vec<Vec<i32>> = domain
            .iter()
            .map(|&r| {
                (0..self.rank())
                    .map(|j| {
                        self.coeffs(r)
                            .iter()
                            .enumerate()
                            .map(|(i, c)| c * self.cartan[i][j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        integer_kernel(&rows, self.rank())
            .into_iter()
            .map(Cochar)
            .collect()
    }

    /// Integer basis of the cocharacters fixed by `m`.
    pub fn fixed_cochars(&self, m: &RootMap) -> Vec<Cochar> {
        let mut rows = self.matrix_of(m);
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] -= 1;
        }
        integer_kernel(&rows, self.rank())
            .into_iter()
            .map(Cochar)
            .collect()
    }

    /// Searches the automorphism group of the root system for an element that
    /// restricts to `partial` on its domain and fixes every cocharacter
    /// orthogonal to that domain (it must act on the Levi's centre as the
    /// identity, as any automorphism of the Levi built from its Weyl group
    /// and a graph automorphism of its derived group does).
    pub fn extends_to_ambient(&self, partial: &RestrictedMap) -> Option<RootMap> {
        let central = self.orthogonal_cochars(&partial.domain);
        self.automorphism_group()
            .iter()
            .find(|g| {
                partial
                    .domain
                    .iter()
                    .zip(&partial.images)
                    .all(|(&r, &img)| g.apply(r) == img)
                    && central.iter().all(|c| self.act_cochar(g, c) == *c)
            })
            .cloned()
    }

    /// Simple roots orthogonal to `λ`.
    pub fn levi_simples(&self, lambda: &Cochar) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| self.pairing(self.simple(i), lambda) == 0)
            .collect()
    }

    /// Checks the two root-level identities for `w = w̄₀,L ∘ w̄₀,G`.
    pub fn verify_w0_identities(
        &self,
        levi: &[usize],
        lambda: &Cochar,
    ) -> Result<W0Report, RootError> {
        let expected = self.levi_simples(lambda);
        let mut given = levi.to_vec();
        given.sort_unstable();
        if given != expected {
            return Err(RootError::LeviMismatch {
                given: given
                    .iter()
                    .map(|&i| self.simple_name(i).to_string())
                    .collect(),
                expected: expected
                    .iter()
                    .map(|&i| self.simple_name(i).to_string())
                    .collect(),
            });
        }
        let all: Vec<usize> = (0..self.rank()).collect();
        let bar_g = self.minus_one_realization(&all)?;
        let bar_g_map = self
            .extends_to_ambient(&bar_g.composite)
            .ok_or_else(|| RootError::Internal("-1 is not an automorphism".into()))?;
        let bar_l = self.minus_one_realization(levi)?;
        let mut checks = Vec::new();
        let Some(ext) = self.extends_to_ambient(&bar_l.composite) else {
            checks.push(W0Check {
                name: "w0bar(L) extends to an automorphism of G".into(),
                holds: false,
            });
            return Ok(W0Report {
                hypothesis_holds: false,
                w: None,
                checks,
            });
        };
        checks.push(W0Check {
            name: "w0bar(L) extends to an automorphism of G".into(),
            holds: true,
        });
        let w = ext.compose(&bar_g_map);
        let levi_roots = self.subsystem_roots(levi);
        checks.push(W0Check {
            name: format!("w fixes all {} roots of Psi(L)", levi_roots.len()),
            holds: levi_roots.iter().all(|&r| w.apply(r) == r),
        });
        let u: HashSet<Root> = self
            .roots()
            .filter(|&r| self.pairing(r, lambda) > 0)
            .collect();
        let minus_u: HashSet<Root> = u.iter().map(|&r| self.neg(r)).collect();
        let image: HashSet<Root> = u.iter().map(|&r| w.apply(r)).collect();
        checks.push(W0Check {
            name: format!(
                "w maps the {} lambda-positive roots onto their negatives",
                u.len()
            ),
            holds: image == minus_u,
        });
        Ok(W0Report {
            hypothesis_holds: true,
            w: Some(w),
            checks,
        })
    }

    /// Renders a root as a combination of simple-root names (`a+2b+g+d`).
    pub fn render_vec(&self, v: &[i32]) -> String {
        let mut out = String::new();
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let name = self.simple_name(i);
            if c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(name);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn render_root(&self, r: Root) -> String {
        self.render_vec(self.coeffs(r))
    }

    /// Parses a linear combination of simple names (`a+2b+g+d`, `-a-b`,
    /// `(a+b)`) into a coefficient vector.
    pub fn parse_vec(&self, s: &str) -> Result<Vec<i32>, RootError> {
        let err = || RootError::Parse(s.to_string());
        let mut t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        for suffix in ["^v", "∨"] {
            if let Some(stripped) = t.strip_suffix(suffix) {
                t = stripped.to_string();
            }
        }
        let mut outer = 1;
        if let Some(rest) = t.strip_prefix("-(") {
            t = rest.strip_suffix(')').ok_or_else(err)?.to_string();
            outer = -1;
        } else if let Some(rest) = t.strip_prefix('(') {
            t = rest.strip_suffix(')').ok_or_else(err)?.to_string();
        }
        if t.is_empty() {
            return Err(err());
        }
        if t == "0" {
            return Ok(vec![0; self.rank()]);
        }
        let mut v = vec![0; self.rank()];
        let chars: Vec<char> = t.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let mut sign = 1;
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -1;
                }
                i += 1;
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let coef: i32 = if i > start {
                chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| err())?
            } else {
                1
            };
            if i < chars.len() && chars[i] == '*' {
                i += 1;
            }
            let name_start = i;
            while i < chars.len() && chars[i] != '+' && chars[i] != '-' {
                i += 1;
            }
            let name: String = chars[name_start..i].iter().collect();
            if name.is_empty() {
                return Err(err());
            }
            let idx = self.simple_index_by_name(&name)?;
            v[idx] += sign * coef * outer;
        }
        Ok(v)
    }

    /// A root given either by signed label (`12`, `-2`) or by a combination
    /// of simple names.
    pub fn parse_root(&self, s: &str) -> Result<Root, RootError> {
        let t = s.trim();
        if let Ok(label) = t.parse::<i32>() {
            return self.by_label(label);
        }
        self.root_of(&self.parse_vec(t)?)
    }

    /// A cocharacter given as a combination of simple coroot names, or as a
    /// signed root label meaning that root's coroot; `0` is the zero cocharacter.
    pub fn parse_cochar(&self, s: &str) -> Result<Cochar, RootError> {
        let t = s.trim();
        if t == "0" {
            return Ok(Cochar::zero(self.rank()));
        }
        if let Ok(label) = t.parse::<i32>() {
            return Ok(self.coroot(self.by_label(label)?));
        }
        Ok(Cochar(self.parse_vec(t)?))
    }
}

/// Letter of a Weyl-group word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeylLetter {
    Reflect(Root),
    Sigma(i32),
}

/// A bijection of the root set induced by a lattice automorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootMap {
    images: Vec<Root>,
}

impl RootMap {
    pub fn identity(n: usize) -> Self {
        RootMap {
            images: (0..n).map(|i| Root(i as u16)).collect(),
        }
    }

    pub fn apply(&self, r: Root) -> Root {
        self.images[r.index()]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &RootMap) -> RootMap {
        RootMap {
            images: other.images.iter().map(|&r| self.apply(r)).collect(),
        }
    }

    pub fn inverse(&self) -> RootMap {
        let mut images = vec![Root(0); self.images.len()];
        for (i, &r) in self.images.iter().enumerate() {
            images[r.index()] = Root(i as u16);
        }
        RootMap { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, r)| r.index() == i)
    }

    pub fn images(&self) -> &[Root] {
        &self.images
    }
}

/// A root map defined on a subset of roots (typically a Levi subsystem).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedMap {
    pub domain: Vec<Root>,
    pub images: Vec<Root>,
}

impl RestrictedMap {
    pub fn restrict(m: &RootMap, domain: &[Root]) -> Self {
        RestrictedMap {
            domain: domain.to_vec(),
            images: domain.iter().map(|&r| m.apply(r)).collect(),
        }
    }

    pub fn get(&self, r: Root) -> Option<Root> {
        self.domain
            .iter()
            .position(|&d| d == r)
            .map(|i| self.images[i])
    }
}

#[derive(Debug, Clone)]
pub struct MinusOne {
    pub w0: RootMap,
    pub sigma_l: Option<RestrictedMap>,
    /// `w₀ ∘ σ_L` restricted to the subsystem; always `−1` there.
    pub composite: RestrictedMap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct W0Check {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct W0Report {
    /// False when w̄₀,L does not extend to the ambient system.
    pub hypothesis_holds: bool,
    pub w: Option<RootMap>,
    pub checks: Vec<W0Check>,
}

impl W0Report {
    pub fn all_hold(&self) -> bool {
        self.hypothesis_holds && self.checks.iter().all(|c| c.holds)
    }
}

fn orbit_positive_roots(cartan: &[Vec<i32>]) -> Vec<Vec<i32>> {
    let n = cartan.len();
    let simples: Vec<Vec<i32>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut seen: HashSet<Vec<i32>> = simples.iter().cloned().collect();
    let mut queue: VecDeque<Vec<i32>> = simples.iter().cloned().collect();
    while let Some(r) = queue.pop_front() {
        for i in 0..n {
            let p: i32 = (0..n).map(|k| r[k] * cartan[k][i]).sum();
            let mut s = r.clone();
            s[i] -= p;
            if seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    let mut pos: Vec<Vec<i32>> = seen
        .into_iter()
        .filter(|r| r.iter().all(|&c| c >= 0))
        .collect();
    pos.sort();
    pos
}

fn closure(identity: RootMap, gens: &[RootMap]) -> Vec<RootMap> {
    let mut seen: HashSet<RootMap> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.compose(s);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
        out.push(g);
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Integer basis of `{x : rows · x = 0}` via rational row reduction.
pub(crate) fn integer_kernel(rows: &[Vec<i32>], ncols: usize) -> Vec<Vec<i32>> {
    let mut m: Vec<Vec<Ratio<i64>>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Ratio::from_integer(x as i64)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&i| m[i][col] != Ratio::from_integer(0)) else {
            continue;
        };
        m.swap(row, p);
        let piv = m[row][col];
        for x in m[row].iter_mut() {
            *x /= piv;
        }
        for i in 0..m.len() {
            if i != row && m[i][col] != Ratio::from_integer(0) {
                let f = m[i][col];
                for j in 0..ncols {
                    let d = m[row][j] * f;
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Ratio::from_integer(0i64); ncols];
            v[f] = Ratio::from_integer(1);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f];
            }
            let lcm = v.iter().fold(1i64, |acc, x| lcm(acc, *x.denom()));
            let ints: Vec<i64> = v.iter().map(|x| (x * lcm).to_integer()).collect();
            let g = ints.iter().fold(0i64, |acc, &x| gcd(acc, x.abs()));
            ints.iter().map(|&x| (x / g.max(1)) as i32).collect()
        })
        .collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d4() -> RootSystem {
        RootSystem::new(Dynkin::D4).unwrap()
    }

    fn named(rs: &RootSystem, s: &str) -> Root {
        rs.parse_root(s).unwrap()
    }

    #[test]
    fn sizes() {
        assert_eq!(d4().len(), 24);
        assert_eq!(RootSystem::new(Dynkin::A(2)).unwrap().len(), 6);
        assert_eq!(RootSystem::new(Dynkin::A(3)).unwrap().len(), 12);
        assert_eq!(RootSystem::new(Dynkin::A(4)).unwrap().len(), 20);
        assert!(RootSystem::new(Dynkin::A(5)).is_err());
    }

    #[test]
    fn roots_are_sign_coherent_and_negation_closed() {
        for rs in [d4(), RootSystem::new(Dynkin::A(4)).unwrap()] {
            for r in rs.roots() {
                let c = rs.coeffs(r);
                assert!(c.iter().all(|&x| x >= 0) || c.iter().all(|&x| x <= 0));
                let neg: Vec<i32> = c.iter().map(|x| -x).collect();
                assert_eq!(rs.root_of(&neg).unwrap(), rs.neg(r));
            }
            for i in 0..rs.rank() {
                assert_eq!(rs.cartan()[i][i], 2);
            }
        }
    }

    #[test]
    fn d4_simple_labels() {
        let rs = d4();
        assert_eq!(rs.label(rs.simple(0)), 1);
        assert_eq!(rs.label(rs.simple(2)), 2);
        assert_eq!(rs.label(rs.simple(3)), 3);
        assert_eq!(rs.label(rs.simple(1)), 4);
        assert_eq!(rs.coeffs(rs.by_label(12).unwrap()), &[1, 2, 1, 1]);
    }

    #[test]
    fn pairing_examples() {
        let rs = d4();
        let hi = named(&rs, "a+2b+g+d");
        assert_eq!(rs.pairing(hi, &rs.parse_cochar("a+g").unwrap()), 0);
        let a = named(&rs, "a");
        assert_eq!(rs.pairing(a, &rs.coroot(a)), 2);
        let b = named(&rs, "b");
        assert_eq!(rs.pairing(b, &rs.parse_cochar("a+2b+g+d").unwrap()), 1);
        assert!(rs
            .pairing_checked(&[1, 0, 1, 0], &Cochar(vec![0; 4]))
            .is_err());
    }

    #[test]
    fn reflect_examples() {
        let rs = d4();
        let a = named(&rs, "a");
        assert_eq!(rs.reflect(a, a), rs.neg(a));
        assert_eq!(rs.reflect(a, named(&rs, "b+d")), named(&rs, "a+b+d"));
        assert_eq!(rs.reflect(named(&rs, "b"), a), named(&rs, "a+b"));
    }

    #[test]
    fn reflection_is_involution() {
        let rs = d4();
        for xi in rs.roots() {
            for z in rs.roots() {
                assert_eq!(rs.reflect(xi, rs.reflect(xi, z)), z);
            }
        }
    }

    #[test]
    fn sigma_action() {
        let rs = d4();
        let s = rs.sigma();
        assert_eq!(rs.diagram_act(&s, named(&rs, "a")), named(&rs, "g"));
        assert_eq!(rs.diagram_act(&s, named(&rs, "g")), named(&rs, "d"));
        assert_eq!(rs.diagram_act(&s, named(&rs, "d")), named(&rs, "a"));
        assert_eq!(rs.diagram_act(&s, named(&rs, "b")), named(&rs, "b"));
        let hi = rs.by_label(12).unwrap();
        assert_eq!(s.apply(hi), hi);
        assert_eq!(rs.sigma_order(), 3);
        assert_eq!(RootSystem::new(Dynkin::A(2)).unwrap().sigma_order(), 2);
    }

    fn n_alpha_sigma(rs: &RootSystem) -> Vec<WeylLetter> {
        vec![WeylLetter::Reflect(rs.simple(0)), WeylLetter::Sigma(1)]
    }

    #[test]
    fn n_alpha_sigma_cycles() {
        let rs = d4();
        let word = n_alpha_sigma(&rs);
        let img = |l: i32| rs.label(rs.weyl_act(&word, rs.by_label(l).unwrap()));
        let cycle = [4, 5, 8, 11, 10, 7];
        for k in 0..6 {
            assert_eq!(img(cycle[k]), cycle[(k + 1) % 6]);
        }
        assert_eq!(img(6), 9);
        assert_eq!(img(9), 6);
        assert_eq!(img(12), 12);
        assert_eq!(
            rs.word_map(&word).apply(rs.by_label(4).unwrap()),
            rs.by_label(5).unwrap()
        );
    }

    /// Brute-force search over all assignments of labels 5..=11 to the seven
    /// remaining positive roots: the n_α σ cycles pin every label except that
    /// 6 and 9 may be exchanged (the 2-cycle is symmetric).
    #[test]
    fn d4_label_table_is_forced() {
        let rs = d4();
        let fixed: Vec<Vec<i32>> = D4_LABELS[..4].iter().map(|a| a.to_vec()).collect();
        let hi = vec![1, 2, 1, 1];
        let rest: Vec<Vec<i32>> = rs
            .positive_roots()
            .map(|r| rs.coeffs(r).to_vec())
            .filter(|v| !fixed.contains(v) && *v != hi)
            .collect();
        assert_eq!(rest.len(), 7);
        let nsig = rs.word_map(&n_alpha_sigma(&rs));
        let target: HashMap<i32, i32> = [
            (4, 5),
            (5, 8),
            (8, 11),
            (11, 10),
            (10, 7),
            (7, 4),
            (6, 9),
            (9, 6),
            (12, 12),
        ]
        .into_iter()
        .collect();
        let mut solutions = Vec::new();
        for perm in permutations(7) {
            let mut table = fixed.clone();
            table.extend(perm.iter().map(|&i| rest[i].clone()));
            table.push(hi.clone());
            let label_of = |v: &[i32]| table.iter().position(|t| t == v).map(|p| p as i32 + 1);
            let ok = target.iter().all(|(&from, &to)| {
                let r = rs.root_of(&table[(from - 1) as usize]).unwrap();
                label_of(rs.coeffs(nsig.apply(r))) == Some(to)
            });
            if ok {
                solutions.push(table);
            }
        }
        assert_eq!(solutions.len(), 2);
        let expected: Vec<Vec<i32>> = D4_LABELS.iter().map(|r| r.to_vec()).collect();
        assert!(solutions.contains(&expected));
        let mut swapped = expected.clone();
        swapped.swap(5, 8);
        assert!(solutions.contains(&swapped));
    }

    #[test]
    fn group_orders() {
        let rs = d4();
        assert_eq!(rs.weyl_group().len(), 192);
        assert_eq!(rs.diagram_symmetries().len(), 6);
        assert_eq!(rs.automorphism_group().len(), 1152);
        let a3 = RootSystem::new(Dynkin::A(3)).unwrap();
        assert_eq!(a3.weyl_group().len(), 24);
        assert_eq!(a3.automorphism_group().len(), 48);
    }

    #[test]
    fn longest_element_matches_twelve_letter_word() {
        let rs = d4();
        let letters = "a b a g b a d b a g b d";
        let word: Vec<WeylLetter> = letters
            .split(' ')
            .map(|n| WeylLetter::Reflect(rs.simple(rs.simple_index_by_name(n).unwrap())))
            .collect();
        let w0 = rs.longest_element(&[0, 1, 2, 3]);
        assert_eq!(rs.word_map(&word), w0);
        for r in rs.roots() {
            assert_eq!(w0.apply(r), rs.neg(r));
        }
        let (_, reduced) = rs.longest_element_word(&[0, 1, 2, 3]);
        assert_eq!(reduced.len(), 12);
    }

    #[test]
    fn longest_element_small_cases() {
        let rs = d4();
        let a = rs.simple(0);
        assert_eq!(rs.longest_element(&[0]), rs.reflection(a));
        assert!(rs.longest_element(&[]).is_identity());
        let a3 = RootSystem::new(Dynkin::A(3)).unwrap();
        let w0 = a3.longest_element(&[0, 1, 2]);
        let pos: HashSet<Root> = a3.positive_roots().map(|r| w0.apply(r)).collect();
        let neg: HashSet<Root> = a3.positive_roots().map(|r| a3.neg(r)).collect();
        assert_eq!(pos, neg);
    }

    #[test]
    fn minus_one_cases() {
        let rs = d4();
        let m = rs.minus_one_realization(&[0, 2, 3]).unwrap();
        assert!(m.sigma_l.is_none());
        assert_eq!(m.w0.compose(&m.w0), RootMap::identity(24));

        let a3 = RootSystem::new(Dynkin::A(3)).unwrap();
        let m = a3.minus_one_realization(&[0, 1]).unwrap();
        let sigma_l = m.sigma_l.clone().expect("A2 needs a graph automorphism");
        let (a, b) = (a3.simple(0), a3.simple(1));
        assert_eq!(sigma_l.get(a), Some(b));
        // n_β n_α n_β σ on Ψ(L)
        let nbnanb = a3.word_map(&[
            WeylLetter::Reflect(b),
            WeylLetter::Reflect(a),
            WeylLetter::Reflect(b),
        ]);
        for (r, img) in m.composite.domain.iter().zip(&m.composite.images) {
            assert_eq!(nbnanb.apply(sigma_l.get(*r).unwrap()), *img);
            assert_eq!(*img, a3.neg(*r));
        }
        assert!(a3.minus_one_realization(&[0]).unwrap().sigma_l.is_none());
    }

    #[test]
    fn extension_search() {
        let a3 = RootSystem::new(Dynkin::A(3)).unwrap();
        let m = a3.minus_one_realization(&[0, 1]).unwrap();
        assert!(a3.extends_to_ambient(&m.composite).is_none());

        let full = a3.minus_one_realization(&[0, 1, 2]).unwrap();
        let ext = a3.extends_to_ambient(&full.composite).unwrap();
        for r in a3.roots() {
            assert_eq!(ext.apply(r), a3.neg(r));
        }

        let rs = d4();
        let m = rs.minus_one_realization(&[0, 2, 3]).unwrap();
        assert!(rs.extends_to_ambient(&m.composite).is_some());
    }

    #[test]
    fn w0_identities() {
        let rs = d4();
        let lambda = rs.parse_cochar("a+2b+g+d").unwrap();
        let rep = rs.verify_w0_identities(&[0, 2, 3], &lambda).unwrap();
        assert!(rep.all_hold(), "{rep:?}");

        let regular = Cochar(vec![1, 1, 1, 1]);
        let rep = rs.verify_w0_identities(&[], &regular).unwrap();
        assert!(rep.all_hold());
        let w = rep.w.unwrap();
        assert!(rs.roots().all(|r| w.apply(r) == rs.neg(r)));

        let a3 = RootSystem::new(Dynkin::A(3)).unwrap();
        let lam = a3.parse_cochar("a+2b+3g").unwrap();
        let rep = a3.verify_w0_identities(&[0, 1], &lam).unwrap();
        assert!(!rep.hypothesis_holds);

        assert!(rs.verify_w0_identities(&[0], &lambda).is_err());
    }

    #[test]
    fn parsing() {
        let rs = d4();
        assert_eq!(rs.parse_root("12").unwrap(), rs.by_label(12).unwrap());
        assert_eq!(
            rs.parse_root("-(a+b)").unwrap(),
            rs.neg(rs.by_label(5).unwrap())
        );
        assert_eq!(rs.parse_root("α+β").unwrap(), rs.by_label(5).unwrap());
        assert_eq!(rs.render_root(rs.by_label(12).unwrap()), "a+2b+g+d");
        assert_eq!(rs.parse_cochar("(a+2b+g+d)^v").unwrap().0, vec![1, 2, 1, 1]);
        assert!(rs.parse_cochar("0").unwrap().is_zero());
        assert!(rs.parse_root("a+a").is_err());
        assert!(rs.parse_root("q").is_err());
    }

    #[test]
    fn kernel() {
        let k = integer_kernel(&[vec![1, 1, 0]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v[0] + v[1], 0);
        }
    }
}
