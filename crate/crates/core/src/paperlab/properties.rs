//! Seeded randomized property suites over the engine.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::scenario::{oracle_agrees, random_a2_word};
use crate::chevalley::{adjoint_word, canonical_order, collect, conjugate, Atom, LieVector, Word};
use crate::coeffring::{Poly, Registry};
use crate::rootsys::{Cochar, Dynkin, Root, RootSystem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl PropertyReport {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

struct Tally {
    report: PropertyReport,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally {
            report: PropertyReport {
                name: name.into(),
                cases: 0,
                failures: 0,
                first_failure: None,
            },
        }
    }

    fn record(&mut self, ok: Result<bool, String>, describe: impl FnOnce() -> String) {
        self.report.cases += 1;
        let failure = match ok {
            Ok(true) => None,
            Ok(false) => Some(describe()),
            Err(msg) => Some(format!("{}: {msg}", describe())),
        };
        if let Some(f) = failure {
            self.report.failures += 1;
            self.report.first_failure.get_or_insert(f);
        }
    }
}

const COEFFS: [&str; 8] = ["x", "y", "z", "x*y", "x + 1", "y^2 + z", "x*z + y", "1"];

fn d4() -> RootSystem {
    RootSystem::new(Dynkin::D4).expect("D4 is built in")
}

fn random_coeff(reg: &mut Registry, rng: &mut impl Rng) -> Poly {
    reg.parse(COEFFS[rng.gen_range(0..COEFFS.len())])
        .expect("fixed input")
}

fn random_letters(
    reg: &mut Registry,
    rng: &mut impl Rng,
    pool: &[Root],
    max_len: usize,
) -> Vec<(Root, Poly)> {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| (pool[rng.gen_range(0..pool.len())], random_coeff(reg, rng)))
        .collect()
}

/// A random frame word: Weyl reflections, graph powers and torus elements.
fn random_frame(rs: &RootSystem, reg: &mut Registry, rng: &mut impl Rng, max_len: usize) -> Word {
    let all: Vec<Root> = rs.roots().collect();
    let t = reg.parse("t").expect("fixed input");
    let unit = t.as_monomial().cloned().expect("monomial");
    let len = rng.gen_range(0..=max_len);
    Word(
        (0..len)
            .map(|_| match rng.gen_range(0..3) {
                0 => Atom::Weyl(all[rng.gen_range(0..all.len())]),
                1 => Atom::Graph(rng.gen_range(1..rs.sigma_order().max(2))),
                _ => Atom::Torus {
                    cochar: Cochar((0..rs.rank()).map(|_| rng.gen_range(-2..=2)).collect()),
                    unit: unit.clone(),
                },
            })
            .collect(),
    )
}

/// Random words over every atom kind, root letters on any root.
fn random_mixed(rs: &RootSystem, reg: &mut Registry, rng: &mut impl Rng, max_len: usize) -> Word {
    let all: Vec<Root> = rs.roots().collect();
    let mut w = random_frame(rs, reg, rng, max_len);
    let extra = rng.gen_range(0..=max_len);
    for _ in 0..extra {
        let pos = rng.gen_range(0..=w.0.len());
        let atom = Atom::Root {
            root: all[rng.gen_range(0..all.len())],
            coeff: random_coeff(reg, rng),
        };
        w.0.insert(pos, atom);
    }
    w
}

/// Collecting a product of positive root letters through different orders
/// and different bracketings yields the same element.
pub fn confluence_suite(seed: u64, cases: usize) -> PropertyReport {
    let rs = d4();
    let mut reg = Registry::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pos: Vec<Root> = rs.positive_roots().collect();
    let canon = canonical_order(&rs, &pos).expect("positive roots are nilpotent");
    let mut tally = Tally::new("collection confluence (D4)");
    for _ in 0..cases {
        let letters = random_letters(&mut reg, &mut rng, &pos, 10);
        let mut shuffled = pos.clone();
        shuffled.shuffle(&mut rng);
        let split = rng.gen_range(0..=letters.len());
        let ok = (|| -> Result<bool, String> {
            let direct = collect(&rs, &letters, &canon).map_err(|e| e.to_string())?;
            let other = collect(&rs, &letters, &shuffled).map_err(|e| e.to_string())?;
            let back = collect(&rs, &other.letters(), &canon).map_err(|e| e.to_string())?;
            let left = collect(&rs, &letters[..split], &shuffled).map_err(|e| e.to_string())?;
            let right = collect(&rs, &letters[split..], &canon).map_err(|e| e.to_string())?;
            let mut joined = left.letters();
            joined.extend(right.letters());
            let bracketed = collect(&rs, &joined, &canon).map_err(|e| e.to_string())?;
            Ok(direct == back && direct == bracketed)
        })();
        tally.record(ok, || format!("{} letters", letters.len()));
    }
    tally.report
}

/// `(gh)·ε_ζ(x) = g·(h·ε_ζ(x))` for frame words `g, h`.
pub fn action_law_suite(seed: u64, cases: usize) -> PropertyReport {
    let rs = d4();
    let mut reg = Registry::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<Root> = rs.roots().collect();
    let mut tally = Tally::new("action law (D4)");
    for _ in 0..cases {
        let g = random_frame(&rs, &mut reg, &mut rng, 5);
        let h = random_frame(&rs, &mut reg, &mut rng, 5);
        let letter = Word::single(Atom::Root {
            root: all[rng.gen_range(0..all.len())],
            coeff: random_coeff(&mut reg, &mut rng),
        });
        let ok = (|| -> Result<bool, String> {
            let once = conjugate(&rs, &g.then(&h), &letter).map_err(|e| e.to_string())?;
            let inner = conjugate(&rs, &h, &letter).map_err(|e| e.to_string())?;
            let twice = conjugate(&rs, &g, &inner.to_word()).map_err(|e| e.to_string())?;
            Ok(once.tail_letters() == twice.tail_letters()
                && once.frame.is_identity()
                && twice.frame.is_identity())
        })();
        tally.record(ok, || {
            format!("g = {} atoms, h = {} atoms", g.len(), h.len())
        });
    }
    tally.report
}

/// `Ad(gh) = Ad(g) ∘ Ad(h)` on random Lie vectors, and `Ad(w w⁻¹) = 1`.
pub fn ad_homomorphism_suite(seed: u64, cases: usize) -> PropertyReport {
    let rs = d4();
    let mut reg = Registry::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<Root> = rs.roots().collect();
    let mut tally = Tally::new("Ad homomorphism (D4)");
    for _ in 0..cases {
        let g = random_mixed(&rs, &mut reg, &mut rng, 4);
        let h = random_mixed(&rs, &mut reg, &mut rng, 4);
        let mut v = LieVector::zero(&rs);
        for _ in 0..3 {
            let c = random_coeff(&mut reg, &mut rng);
            v.add_e(all[rng.gen_range(0..all.len())], &c);
        }
        let i = rng.gen_range(0..rs.rank());
        v.h[i] = random_coeff(&mut reg, &mut rng);
        let ok = (|| -> Result<bool, String> {
            let whole = adjoint_word(&rs, &g.then(&h), &v).map_err(|e| e.to_string())?;
            let inner = adjoint_word(&rs, &h, &v).map_err(|e| e.to_string())?;
            let split = adjoint_word(&rs, &g, &inner).map_err(|e| e.to_string())?;
            let round =
                adjoint_word(&rs, &g.then(&g.inverse(&rs)), &v).map_err(|e| e.to_string())?;
            Ok(whole == split && round == v)
        })();
        tally.record(ok, || {
            format!("g = {} atoms, h = {} atoms", g.len(), h.len())
        });
    }
    tally.report
}

/// Engine normal forms of random A₂ words agree with 3×3 matrices over F₁₆.
pub fn a2_oracle_suite(seed: u64, cases: usize, points: usize) -> PropertyReport {
    let rs = RootSystem::new(Dynkin::A(2)).expect("A2 is built in");
    let mut reg = Registry::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new("A2 matrix oracle");
    for _ in 0..cases {
        let w = random_a2_word(&rs, &mut reg, &mut rng, 8);
        let ok = oracle_agrees(&rs, &reg, &w, points, &mut rng);
        tally.record(ok, || crate::chevalley::render_word(&rs, &reg, &w));
    }
    tally.report
}

/// The four suites at their acceptance sizes.
pub fn run_properties(seed: u64) -> Vec<PropertyReport> {
    vec![
        confluence_suite(seed, 500),
        action_law_suite(seed, 300),
        ad_homomorphism_suite(seed, 300),
        a2_oracle_suite(seed, 200, 8),
    ]
}
