//! Named verification scenarios: each chains engine operations on fixed
//! inputs and compares canonical renderings against expected values.

use std::fmt::Display;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::field::{Gf, F16};
use super::matrix::{
    enumerate_m_conjugacy, eval_word, lie_matrix, matrix_oracle_check, random_point, word_vars,
    MatrixElement,
};
use crate::chevalley::{
    adjoint_word, centralizer_system, collect, commutator, conjugate, conjugate_generic,
    frame_conjugate, generic_element, normalize, parse_word, render_word, solve_constraints, Atom,
    ConstraintSystem, LieVector, RadicalElement, Word,
};
use crate::coeffring::{classify_square_obstruction, Poly, Registry, SquareClass};
use crate::parabolic::{
    contains, contains_word, is_k_rational_as_presented, limit_along, minimality_certificate,
    rparabolic, standard_parabolics,
};
use crate::rootsys::{Cochar, Dynkin, Root, RootSystem, WeylLetter};

pub const DEFAULT_SEED: u64 = 0x5EED_2024;

pub const SCENARIOS: [&str; 5] = [
    "d4-gcr-not-gcrk",
    "d4-gir-not-gcr",
    "a2-conjugacy",
    "d4-nonseparability",
    "w0-combinatorics",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScenarioError {
    #[error("unknown scenario `{name}`; registered: {}", registered.join(", "))]
    UnknownScenario {
        name: String,
        registered: Vec<String>,
    },
    #[error("field size {0} is not one of 2, 4, 16")]
    FieldSize(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    /// Field size for the brute-force conjugacy enumeration.
    pub q: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: DEFAULT_SEED,
            q: 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub name: String,
    pub anchor: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub scenario: String,
    pub steps: Vec<Step>,
    pub pass: bool,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn step(&self, name: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.name == name)
    }

    /// Human-readable report, one line per step.
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "== {} [{}] ({} ms)\n",
            self.scenario,
            if self.pass { "PASS" } else { "FAIL" },
            self.elapsed_ms
        );
        for s in &self.steps {
            out.push_str(&format!("  {} {}  ({})\n", s.status, s.name, s.anchor));
            out.push_str(&format!("       expected: {}\n", s.expected));
            out.push_str(&format!("       actual:   {}\n", s.actual));
        }
        out
    }

    /// The report without timing, for reproducibility comparisons.
    pub fn without_timing(&self) -> Report {
        Report {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

type R<T> = Result<T, String>;

fn e<E: Display>(err: E) -> String {
    err.to_string()
}

struct Outcome {
    expected: String,
    actual: String,
    pass: bool,
}

fn same(expected: impl Into<String>, actual: impl Into<String>) -> Outcome {
    let (expected, actual) = (expected.into(), actual.into());
    Outcome {
        pass: expected == actual,
        expected,
        actual,
    }
}

fn judged(expected: impl Into<String>, actual: impl Into<String>, pass: bool) -> Outcome {
    Outcome {
        expected: expected.into(),
        actual: actual.into(),
        pass,
    }
}

struct Steps(Vec<Step>);

impl Steps {
    fn run(&mut self, name: &str, anchor: &str, f: impl FnOnce() -> R<Outcome>) {
        let step = match f() {
            Ok(o) => Step {
                name: name.into(),
                anchor: anchor.into(),
                status: if o.pass { Status::Pass } else { Status::Fail },
                expected: o.expected,
                actual: o.actual,
            },
            Err(msg) => Step {
                name: name.into(),
                anchor: anchor.into(),
                status: Status::Fail,
                expected: "no error".into(),
                actual: format!("error: {msg}"),
            },
        };
        self.0.push(step);
    }
}

pub fn run_scenario(name: &str, config: &RunConfig) -> Result<Report, ScenarioError> {
    let start = Instant::now();
    let steps = match name {
        "d4-gcr-not-gcrk" => d4_gcr_not_gcrk(),
        "d4-gir-not-gcr" => d4_gir_not_gcr(),
        "a2-conjugacy" => a2_conjugacy(config)?,
        "d4-nonseparability" => d4_nonseparability(),
        "w0-combinatorics" => w0_combinatorics(),
        _ => {
            return Err(ScenarioError::UnknownScenario {
                name: name.into(),
                registered: SCENARIOS.iter().map(|s| s.to_string()).collect(),
            })
        }
    };
    Ok(Report {
        scenario: name.into(),
        pass: steps.iter().all(|s| s.status == Status::Pass),
        steps,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn run_all(config: &RunConfig) -> Result<Vec<Report>, ScenarioError> {
    SCENARIOS.iter().map(|n| run_scenario(n, config)).collect()
}

fn d4() -> RootSystem {
    RootSystem::new(Dynkin::D4).expect("D4 is built in")
}

fn roots(rs: &RootSystem, labels: impl IntoIterator<Item = i32>) -> R<Vec<Root>> {
    labels
        .into_iter()
        .map(|l| rs.by_label(l).map_err(e))
        .collect()
}

fn word(rs: &RootSystem, reg: &mut Registry, text: &str) -> R<Word> {
    parse_word(rs, reg, text).map_err(e)
}

/// Cycle notation on `labels`, each cycle starting at its smallest member.
pub fn cycle_notation(rs: &RootSystem, word: &[WeylLetter], labels: &[i32]) -> R<String> {
    let mut seen = Vec::new();
    let mut out = String::new();
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    for &start in &sorted {
        if seen.contains(&start) {
            continue;
        }
        let mut cycle = vec![start];
        seen.push(start);
        let mut cur = start;
        loop {
            let next = rs.label(rs.weyl_act(word, rs.by_label(cur).map_err(e)?));
            if next == start {
                break;
            }
            if !labels.contains(&next) {
                return Err(format!("{cur} leaves the label set"));
            }
            cycle.push(next);
            seen.push(next);
            cur = next;
        }
        let body: Vec<String> = cycle.iter().map(|l| l.to_string()).collect();
        out.push_str(&format!("({})", body.join(" ")));
    }
    Ok(out)
}

fn coeff_list(rs: &RootSystem, reg: &Registry, r: &RadicalElement) -> String {
    r.all_letters()
        .iter()
        .map(|(root, c)| format!("e{}({})", rs.label(*root), reg.render(c)))
        .collect::<Vec<_>>()
        .join("*")
}

fn render_class(class: &SquareClass) -> &'static str {
    match class {
        SquareClass::UnsolvableOverK { .. } => "UNSOLVABLE_OVER_K",
        SquareClass::SolvableCandidate { .. } => "SOLVABLE_CANDIDATE",
    }
}

fn n_alpha_sigma_letters(rs: &RootSystem) -> Vec<WeylLetter> {
    vec![WeylLetter::Reflect(rs.simple(0)), WeylLetter::Sigma(1)]
}

/// `n_α n_β n_α n_γ n_β n_α n_δ n_β n_α n_γ n_β n_δ`.
fn n12_word(rs: &RootSystem) -> Word {
    Word(
        [0, 1, 0, 2, 1, 0, 3, 1, 0, 2, 1, 3]
            .iter()
            .map(|&i| Atom::Weyl(rs.simple(i)))
            .collect(),
    )
}

fn d4_gcr_not_gcrk() -> Vec<Step> {
    let rs = d4();
    let mut reg = Registry::standard();
    let mut steps = Steps(Vec::new());
    let lambda = Cochar(vec![1, 2, 1, 1]);

    steps.run(
        "perm",
        "n_α σ = (4 5 8 11 10 7)(6 9)(12) on the radical labels",
        || {
            let labels: Vec<i32> = (4..=12).collect();
            Ok(same(
                "(4 5 8 11 10 7)(6 9)(12)",
                cycle_notation(&rs, &n_alpha_sigma_letters(&rs), &labels)?,
            ))
        },
    );

    steps.run(
        "v-conjugation",
        "v(√a)·(n_α σ) = (n_α σ) ε12(a)",
        || {
            let v = word(&rs, &mut reg, "e6(s)*e9(s)")?;
            let g = word(&rs, &mut reg, "n[a]·sigma")?;
            let out = conjugate(&rs, &v, &g).map_err(e)?;
            Ok(same("n[a]·sigma·e12(s^2)", out.render(&rs, &reg)))
        },
    );

    steps.run(
        "v-commutes-with-torus",
        "v(√a) commutes with (α+γ)∨(k̄*)",
        || {
            let v = word(&rs, &mut reg, "e6(s)*e9(s)")?;
            let t = word(&rs, &mut reg, "t[a+g](t)")?;
            Ok(same(
                "1",
                commutator(&rs, &v, &t).map_err(e)?.render(&rs, &reg),
            ))
        },
    );

    steps.run("h-k-defined", "H is k-defined", || {
        let gens = [
            word(&rs, &mut reg, "n[a]·sigma·e12(a)")?,
            word(&rs, &mut reg, "t[a+g](t)")?,
        ];
        let ok = gens.iter().all(|g| is_k_rational_as_presented(&reg, g));
        Ok(judged(
            "all generators k-rational",
            if ok {
                "all generators k-rational"
            } else {
                "a coefficient involves √a"
            },
            ok,
        ))
    });

    steps.run(
        "h-prime-in-levi",
        "H' = ⟨n_α σ, (α+γ)∨(k̄*)⟩ < L_λ",
        || {
            let mut fixed = Vec::new();
            for text in ["n[a]·sigma", "t[a+g](t)"] {
                let el = normalize(&rs, &word(&rs, &mut reg, text)?).map_err(e)?;
                let lim = limit_along(&rs, &lambda, &el).map_err(e)?;
                fixed.push(lim.as_ref() == Some(&el));
            }
            let ok = fixed.iter().all(|&b| b);
            Ok(judged(
                "both fixed by λ",
                if ok { "both fixed by λ" } else { "moved" },
                ok,
            ))
        },
    );

    steps.run("coroot-image", "(n_α σ)·(α+γ)∨ = (γ+δ)∨", || {
        let m = rs.word_map(&n_alpha_sigma_letters(&rs));
        let image = rs.act_cochar(&m, &Cochar(vec![1, 0, 1, 0]));
        Ok(same("g+d", rs.render_vec(&image.0)))
    });

    steps.run("cube", "(n_α σ)³ = n_α n_γ n_δ", || {
        let g = word(&rs, &mut reg, "n[a]·sigma")?;
        let cube = g.then(&g).then(&g);
        let rhs = word(&rs, &mut reg, "n[a]·n[g]·n[d]")?;
        let eq = crate::chevalley::words_equal(&rs, &cube, &rhs).map_err(e)?;
        Ok(judged("equal", if eq { "equal" } else { "different" }, eq))
    });

    steps.run(
        "generic-collection",
        "u⁻¹·(n_α σ ε12(a)) in the displayed order",
        || {
            let radical = roots(&rs, 4..=12)?;
            let u = generic_element(&rs, &mut reg, &radical).map_err(e)?;
            let g = word(&rs, &mut reg, "n[a]·sigma·e12(a)")?;
            let order = roots(&rs, [7, 10, 9, 11, 6, 8, 4, 5, 12])?;
            let (head, tail) = conjugate_generic(&rs, &u, &g, &order).map_err(e)?;
            let expected = word(
                &rs,
                &mut reg,
                "n[a]·sigma·e7(x4 + x7)*e10(x7 + x10)*e9(x6 + x9)*e11(x10 + x11)*e6(x6 + x9)\
                 *e8(x8 + x11)*e4(x4 + x5)*e5(x5 + x8)\
                 *e12(x5*x10 + x5*x11 + x7*x8 + x7*x11 + x8*x10 + x9^2 + a)",
            )?;
            let mut actual_atoms = head.frame_letters.clone();
            actual_atoms.extend(
                tail.all_letters()
                    .into_iter()
                    .map(|(root, coeff)| Atom::Root { root, coeff }),
            );
            let actual = Word(actual_atoms);
            Ok(judged(
                render_word(&rs, &reg, &expected),
                render_word(&rs, &reg, &actual),
                actual == expected,
            ))
        },
    );

    steps.run(
        "equalities",
        "x4 = x5 = x7 = x8 = x10 = x11, x6 = x9",
        || {
            let radical = roots(&rs, 4..=12)?;
            let u = generic_element(&rs, &mut reg, &radical).map_err(e)?;
            let g = word(&rs, &mut reg, "n[a]·sigma·e12(a)")?;
            let (_, tail) = conjugate_generic(&rs, &u, &g, &radical).map_err(e)?;
            let mut system = ConstraintSystem::default();
            for (r, c) in tail.all_letters() {
                if rs.label(r) != 12 {
                    system.push(c);
                }
            }
            let coords: Vec<_> = u
                .coeffs()
                .iter()
                .map(|p| *p.variables().iter().next().unwrap())
                .collect();
            let sol = solve_constraints(&reg, &system, &coords).map_err(e)?;
            Ok(same(
                "x4 = x5 = x7 = x8 = x10 = x11; x6 = x9",
                sol.render_classes(&reg).join("; "),
            ))
        },
    );

    let reduced = |reg: &mut Registry| -> R<Poly> {
        let mut reg2 = Registry::standard();
        let radical = roots(&rs, 4..=12)?;
        let u = generic_element(&rs, &mut reg2, &radical).map_err(e)?;
        let g = word(&rs, &mut reg2, "n[a]·sigma·e12(a)")?;
        let order = roots(&rs, [7, 10, 9, 11, 6, 8, 4, 5, 12])?;
        let (_, tail) = conjugate_generic(&rs, &u, &g, &order).map_err(e)?;
        let c12 = tail
            .get(rs.by_label(12).map_err(e)?)
            .cloned()
            .unwrap_or_default();
        let y = reg2.parse("y").map_err(e)?;
        let x9 = reg2.parse("x9").map_err(e)?;
        let mut bindings = std::collections::BTreeMap::new();
        for name in ["x4", "x5", "x7", "x8", "x10", "x11"] {
            bindings.insert(reg2.lookup(name).unwrap(), y.clone());
        }
        bindings.insert(reg2.lookup("x6").unwrap(), x9);
        let p = c12.substitute(&reg2, &bindings).map_err(e)?;
        // re-express in the scenario registry by name
        reg.parse(&reg2.render(&p)).map_err(e)
    };

    steps.run("substituted", "y² + x9² + a = 0", || {
        let p = reduced(&mut reg)?;
        let expected = reg.parse("y^2 + x9^2 + a").map_err(e)?;
        Ok(judged(reg.render(&expected), reg.render(&p), p == expected))
    });

    steps.run("square-root", "(y + x9)² = a", || {
        let p = reduced(&mut reg)?;
        let class = classify_square_obstruction(&reg, &p);
        let root = match &class {
            SquareClass::UnsolvableOverK { root } => reg.render(root),
            _ => "-".into(),
        };
        let yx = reg.parse("y + x9").map_err(e)?;
        let expected = reg.render(&yx);
        Ok(same(expected, root))
    });

    steps.run(
        "obstruction",
        "impossible since y, x9 ∈ k and a ∉ k²",
        || {
            let p = reduced(&mut reg)?;
            Ok(same(
                "UNSOLVABLE_OVER_K",
                render_class(&classify_square_obstruction(&reg, &p)),
            ))
        },
    );

    steps.run(
        "minimal",
        "P_λ is minimal among parabolics containing H'",
        || {
            let data = rparabolic(&rs, &lambda);
            let gens = [
                word(&rs, &mut reg, "n[a]·sigma")?,
                word(&rs, &mut reg, "t[a+g](t)")?,
            ];
            let report = minimality_certificate(&rs, &reg, &data, &gens).map_err(e)?;
            let contained = report.candidates.iter().filter(|c| c.contains_all).count();
            Ok(judged(
                "0 of 7 refinements contain H'",
                format!(
                    "{contained} of {} refinements contain H'",
                    report.candidates.len()
                ),
                report.minimal && report.candidates.len() == 7,
            ))
        },
    );

    steps.0
}

fn d4_gir_not_gcr() -> Vec<Step> {
    let rs = d4();
    let mut reg = Registry::standard();
    let mut steps = Steps(Vec::new());
    let lambda = Cochar(vec![1, 2, 1, 1]);
    let v_inv = "e-9(s)*e-6(s)";

    steps.run(
        "k-generator",
        "v(√a)·(n_α σ) = n_α σ ε−12(a)",
        || {
            let v = word(&rs, &mut reg, "e-6(s)*e-9(s)")?;
            let g = word(&rs, &mut reg, "n[a]·sigma")?;
            Ok(same(
                "n[a]·sigma·e-12(s^2)",
                conjugate(&rs, &v, &g).map_err(e)?.render(&rs, &reg),
            ))
        },
    );

    steps.run(
        "conjugated-generators",
        "v(√a)⁻¹·H = ⟨n_α σ, (α+γ)∨(k̄*), ε11(1)ε2(√a)⟩",
        || {
            let v = word(&rs, &mut reg, v_inv)?;
            let gens = ["n[a]·sigma·e-12(a)", "t[a+g](t)", "e11(1)"];
            let expected = ["n[a]·sigma", "t[a+g](t)", "e11(1)*e2(s)"];
            let mut actual = Vec::new();
            let mut ok = true;
            for (g, x) in gens.iter().zip(expected) {
                let out = conjugate(&rs, &v, &word(&rs, &mut reg, g)?).map_err(e)?;
                let want = word(&rs, &mut reg, x)?;
                ok &= crate::chevalley::words_equal(&rs, &out.to_word(), &want).map_err(e)?;
                actual.push(out.render(&rs, &reg));
            }
            Ok(judged(expected.join(", "), actual.join(", "), ok))
        },
    );

    steps.run("in-p-lambda", "v(√a)⁻¹·H < P_λ", || {
        let mut ok = true;
        for g in ["n[a]·sigma", "t[a+g](t)", "e11(1)*e2(s)"] {
            ok &= contains_word(&rs, &lambda, &word(&rs, &mut reg, g)?).map_err(e)? == Some(true);
        }
        Ok(judged(
            "contained",
            if ok { "contained" } else { "not contained" },
            ok,
        ))
    });

    let m_gens = |reg: &mut Registry| -> R<Vec<Word>> {
        Ok(vec![
            word(&rs, reg, "n[a]·sigma")?,
            word(&rs, reg, "t[a+g](t)")?,
        ])
    };

    steps.run(
        "centralizer-n-alpha-sigma",
        "C_{R_u(P_λ)}(n_α σ): x4 = x5 = x7 = x8 = x10 = x11, x6 = x9",
        || {
            let mut r = Registry::standard();
            let gens = vec![word(&rs, &mut r, "n[a]·sigma")?];
            let out = centralizer_system(&rs, &mut r, &gens, &roots(&rs, 4..=12)?).map_err(e)?;
            let residual: Vec<String> = out.solution.residual.iter().map(|p| r.render(p)).collect();
            Ok(same(
                "x4 = x5 = x7 = x8 = x10 = x11; x6 = x9 | residual x4^2 + x6^2",
                format!(
                    "{} | residual {}",
                    out.solution.render_classes(&r).join("; "),
                    residual.join(", ")
                ),
            ))
        },
    );

    steps.run("centralizer-radical", "C_{R_u(P_λ)}(M) = U12", || {
        let mut r = Registry::standard();
        let gens = m_gens(&mut r)?;
        let out = centralizer_system(&rs, &mut r, &gens, &roots(&rs, 4..=12)?).map_err(e)?;
        let forced_six = out.solution.forced.iter().any(|f| f == "x6^2 = 0");
        let actual = format!(
            "{} (forced: {})",
            out.render_subgroup(&rs)
                .unwrap_or_else(|| "unsolved".into()),
            out.solution.forced.join(", ")
        );
        Ok(judged(
            "U12 (forced: ..., x6^2 = 0)",
            actual,
            forced_six && out.render_subgroup(&rs).as_deref() == Some("U12"),
        ))
    });

    steps.run(
        "centralizer-opposite",
        "C_{R_u(P_λ⁻)}(M) = U−12",
        || {
            let mut r = Registry::standard();
            let gens = m_gens(&mut r)?;
            let out = centralizer_system(&rs, &mut r, &gens, &roots(&rs, (4..=12).map(|l| -l))?)
                .map_err(e)?;
            let forced_six = out.solution.forced.iter().any(|f| f == "xm6^2 = 0");
            let actual = format!(
                "{} (forced: {})",
                out.render_subgroup(&rs)
                    .unwrap_or_else(|| "unsolved".into()),
                out.solution.forced.join(", ")
            );
            Ok(judged(
                "U-12 (forced: ..., xm6^2 = 0)",
                actual,
                forced_six && out.render_subgroup(&rs).as_deref() == Some("U-12"),
            ))
        },
    );

    steps.run(
        "levi-torus-centralizer",
        "C_{L_λ}((α+γ)∨, (γ+δ)∨) = T",
        || {
            let data = rparabolic(&rs, &lambda);
            let (c1, c2) = (Cochar(vec![1, 0, 1, 0]), Cochar(vec![0, 0, 1, 1]));
            let survivors: Vec<String> = data
                .l_roots
                .iter()
                .filter(|&&r| rs.pairing(r, &c1) == 0 && rs.pairing(r, &c2) == 0)
                .map(|&r| rs.label(r).to_string())
                .collect();
            let actual = if survivors.is_empty() {
                "T".to_string()
            } else {
                format!("T with root groups {}", survivors.join(","))
            };
            Ok(same("T", actual))
        },
    );

    steps.run(
        "torus-fixed-line",
        "C_T(n_α σ) = (α+2β+γ+δ)∨(k̄*)",
        || {
            let basis = rs.fixed_cochars(&rs.word_map(&n_alpha_sigma_letters(&rs)));
            let rendered: Vec<String> = basis.iter().map(|c| rs.render_vec(&c.0)).collect();
            Ok(same("a+2b+g+d", rendered.join(" ; ")))
        },
    );

    steps.run("g12-centralizes-m", "G12 < C_G(M)", || {
        let mut ok = true;
        let mut r = Registry::standard();
        for g in m_gens(&mut r)? {
            for u in ["e12(x)", "e-12(x)"] {
                let c = commutator(&rs, &g, &word(&rs, &mut r, u)?).map_err(e)?;
                ok &= c.is_identity();
            }
        }
        Ok(judged(
            "commute",
            if ok { "commute" } else { "do not commute" },
            ok,
        ))
    });

    steps.run(
        "n12-longest",
        "n12 = n_α n_β n_α n_γ n_β n_α n_δ n_β n_α n_γ n_β n_δ is the longest element",
        || {
            let el = normalize(&rs, &n12_word(&rs)).map_err(e)?;
            let w0 = rs.longest_element(&[0, 1, 2, 3]);
            let minus_one = rs.roots().all(|r| el.frame.map.apply(r) == rs.neg(r));
            Ok(judged(
                "w0 = -1",
                format!(
                    "{}{}",
                    if el.frame.map == w0 { "w0" } else { "not w0" },
                    if minus_one { " = -1" } else { "" }
                ),
                el.frame.map == w0 && minus_one,
            ))
        },
    );

    let n12_image = |reg: &mut Registry, label: i32| -> R<String> {
        let n = n12_word(&rs);
        let h = word(&rs, reg, &format!("e{label}(x)"))?;
        let out = conjugate(&rs, &n.inverse(&rs), &h).map_err(e)?;
        let letters = out.tail_letters();
        match letters.as_slice() {
            [(r, _)] if out.frame.is_identity() => Ok(rs.label(*r).to_string()),
            _ => Err(format!("unexpected image {}", out.render(&rs, reg))),
        }
    };

    steps.run("n12-u11", "n12⁻¹·U11 = U−12", || {
        Ok(same("-12", n12_image(&mut reg, 11)?))
    });

    steps.run("n12-u2", "n12⁻¹·U2 = U−2", || {
        Ok(same("-2", n12_image(&mut reg, 2)?))
    });

    steps.run(
        "case2-exclusion",
        "ε−12(1)ε−2(√a) ∉ P_{(α+2β+γ+δ)∨}",
        || {
            let el = normalize(&rs, &word(&rs, &mut reg, "e-12(1)*e-2(s)")?).map_err(e)?;
            let lim = limit_along(&rs, &lambda, &el).map_err(e)?;
            Ok(same(
                "no limit",
                lim.map(|l| l.render(&rs, &reg))
                    .unwrap_or_else(|| "no limit".into()),
            ))
        },
    );

    steps.run(
        "case2-highest-reflection",
        "n_{α+2β+γ+δ}⁻¹·(ε11(1)ε2(√a)) ∉ P_{(α+2β+γ+δ)∨}",
        || {
            let n = word(&rs, &mut reg, "n[a+2b+g+d]")?;
            let h = word(&rs, &mut reg, "e11(1)*e2(s)")?;
            let out = conjugate(&rs, &n.inverse(&rs), &h).map_err(e)?;
            let lim = limit_along(&rs, &lambda, &out).map_err(e)?;
            let image = out.render(&rs, &reg);
            Ok(judged(
                "e-4(1)*e2(s); no limit",
                format!(
                    "{image}; {}",
                    if lim.is_none() {
                        "no limit"
                    } else {
                        "has a limit"
                    }
                ),
                image == "e-4(1)*e2(s)" && lim.is_none(),
            ))
        },
    );

    steps.run(
        "case2-engine-image",
        "n12⁻¹·(ε11(1)ε2(√a)) ∉ P_{(α+2β+γ+δ)∨}",
        || {
            let h = word(&rs, &mut reg, "e11(1)*e2(s)")?;
            let out = conjugate(&rs, &n12_word(&rs).inverse(&rs), &h).map_err(e)?;
            let lim = limit_along(&rs, &lambda, &out).map_err(e)?;
            Ok(same(
                "no limit",
                match lim {
                    None => format!("no limit (image {})", out.render(&rs, &reg)),
                    Some(l) => l.render(&rs, &reg),
                }
                .split(" (")
                .next()
                .unwrap_or_default()
                .to_string(),
            ))
        },
    );

    steps.run("not-k-defined", "v(√a)·P_λ is not k-defined", || {
        let v = word(&rs, &mut reg, "e-6(s)*e-9(s)")?;
        let rational = is_k_rational_as_presented(&reg, &v);
        let el = normalize(&rs, &v).map_err(e)?;
        let opposite = contains(&rs, &lambda.neg(), &el) == Some(true);
        Ok(judged(
            "v(√a) ∈ R_u(P_λ⁻) with a coefficient outside k",
            format!(
                "{}; {}",
                if opposite {
                    "v(√a) ∈ R_u(P_λ⁻)"
                } else {
                    "v(√a) ∉ R_u(P_λ⁻)"
                },
                if rational {
                    "k-rational"
                } else {
                    "not k-rational as presented"
                }
            ),
            opposite && !rational,
        ))
    });

    steps.run("u12-centralizes", "U12 < C_G(v(√a)⁻¹·H)", || {
        let mut ok = true;
        for g in ["n[a]·sigma", "t[a+g](t)", "e11(1)*e2(s)"] {
            let c = commutator(
                &rs,
                &word(&rs, &mut reg, g)?,
                &word(&rs, &mut reg, "e12(x)")?,
            )
            .map_err(e)?;
            ok &= c.is_identity();
        }
        Ok(judged(
            "commute",
            if ok { "commute" } else { "do not commute" },
            ok,
        ))
    });

    steps.run(
        "h-vs-u-12",
        "h = ε11(1)ε2(√a) commutes with no nontrivial element of U−12",
        || {
            let h = word(&rs, &mut reg, "e11(1)*e2(s)")?;
            let c = commutator(&rs, &h, &word(&rs, &mut reg, "e-12(x)")?).map_err(e)?;
            Ok(judged(
                "nontrivial commutator",
                c.render(&rs, &reg),
                !c.is_identity(),
            ))
        },
    );

    steps.run(
        "h-vs-torus",
        "⟨α+β+γ+δ, λ⟩ ≠ 0, so h commutes with no nontrivial element of λ(k̄*)",
        || {
            let p = rs.pairing(rs.by_label(11).map_err(e)?, &lambda);
            let h = word(&rs, &mut reg, "e11(1)*e2(s)")?;
            let t = word(&rs, &mut reg, "t[a+2b+g+d](t)")?;
            let c = commutator(&rs, &t, &h).map_err(e)?;
            Ok(judged(
                "nonzero pairing; nontrivial commutator",
                format!("pairing {p}; {}", c.render(&rs, &reg)),
                p != 0 && !c.is_identity(),
            ))
        },
    );

    steps.run("centralizer-with-h", "C_G(v(√a)⁻¹·H)° = U12", || {
        let mut r = Registry::standard();
        let mut gens = m_gens(&mut r)?;
        gens.push(word(&rs, &mut r, "e11(1)*e2(s)")?);
        let plus = centralizer_system(&rs, &mut r, &gens, &roots(&rs, 4..=12)?).map_err(e)?;
        // on the opposite side M already cuts down to U-12; h must kill it
        let h = word(&rs, &mut r, "e11(1)*e2(s)")?;
        let c = commutator(&rs, &h, &word(&rs, &mut r, "e-12(x)")?).map_err(e)?;
        let x = r.parse("x").map_err(e)?;
        let mut system = ConstraintSystem::default();
        for (_, coeff) in c.tail_letters() {
            system.push(coeff);
        }
        let coord = *x.variables().iter().next().ok_or("no variable")?;
        let sol = solve_constraints(&r, &system, &[coord]).map_err(e)?;
        let minus = if sol.zeros.contains(&coord) {
            "1".to_string()
        } else {
            "U-12".to_string()
        };
        Ok(same(
            "U12 | 1",
            format!(
                "{} | {}",
                plus.render_subgroup(&rs)
                    .unwrap_or_else(|| "unsolved".into()),
                minus
            ),
        ))
    });

    steps.0
}

/// A random word of length ≤ `max_len` over A₂ atoms in `x, y, z, t`.
pub fn random_a2_word(
    rs: &RootSystem,
    reg: &mut Registry,
    rng: &mut impl Rng,
    max_len: usize,
) -> Word {
    let coeffs = ["x", "y", "z", "x*y", "x + 1", "y^2 + z", "x*z + y", "1"];
    let all: Vec<Root> = rs.roots().collect();
    let len = rng.gen_range(0..=max_len);
    let mut atoms = Vec::new();
    for _ in 0..len {
        let atom = match rng.gen_range(0..10) {
            0..=5 => {
                let root = all[rng.gen_range(0..all.len())];
                let coeff = reg
                    .parse(coeffs[rng.gen_range(0..coeffs.len())])
                    .expect("fixed input");
                Atom::Root { root, coeff }
            }
            6 => Atom::Weyl(all[rng.gen_range(0..all.len())]),
            7 => Atom::Graph(1),
            8 => {
                let cochar = Cochar(vec![rng.gen_range(-2..=2), rng.gen_range(-2..=2)]);
                let unit = reg.parse("t").expect("fixed input");
                Atom::Torus {
                    cochar,
                    unit: unit.as_monomial().cloned().expect("monomial"),
                }
            }
            _ => Atom::Inverse(Box::new(Atom::Weyl(all[rng.gen_range(0..all.len())]))),
        };
        atoms.push(atom);
    }
    Word(atoms)
}

/// Evaluates a word and its engine normal form at `points` random points.
pub fn oracle_agrees(
    rs: &RootSystem,
    reg: &Registry,
    w: &Word,
    points: usize,
    rng: &mut impl Rng,
) -> R<bool> {
    let nf = normalize(rs, w).map_err(e)?.to_word();
    let _ = reg;
    let vars = word_vars(&[w, &nf]);
    for _ in 0..points {
        let p = random_point(&vars, rng);
        let at = |v| p[&v];
        if eval_word::<F16>(rs, w, &at).map_err(e)? != eval_word::<F16>(rs, &nf, &at).map_err(e)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn partition_for(q: u32) -> Result<(usize, Vec<Vec<u8>>), ScenarioError> {
    fn run<const M: u32>() -> (usize, Vec<Vec<u8>>) {
        let values: Vec<Gf<M>> = Gf::<M>::elements().collect();
        let p = enumerate_m_conjugacy(&values);
        (p.group_order, p.classes)
    }
    Ok(match q {
        2 => run::<1>(),
        4 => run::<2>(),
        16 => run::<4>(),
        other => return Err(ScenarioError::FieldSize(other)),
    })
}

fn a2_conjugacy(config: &RunConfig) -> Result<Vec<Step>, ScenarioError> {
    let rs = RootSystem::new(Dynkin::A(2)).expect("A2 is built in");
    let mut reg = Registry::standard();
    let mut steps = Steps(Vec::new());
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let partition = partition_for(config.q)?;

    steps.run(
        "sigma-on-radical",
        "σ·(ε_α(x)ε_β(y)ε_{α+β}(z)) = ε_α(y)ε_β(x)ε_{α+β}(xy+z)",
        || {
            let radical = roots(&rs, [1, 2, 3])?;
            let u = RadicalElement::from_coeffs(
                &radical,
                vec![
                    reg.parse("x").map_err(e)?,
                    reg.parse("y").map_err(e)?,
                    reg.parse("z").map_err(e)?,
                ],
            );
            let s = word(&rs, &mut reg, "sigma")?;
            let out = frame_conjugate(&rs, &s, &u).map_err(e)?;
            Ok(same("e1(y)*e2(x)*e3(x*y + z)", coeff_list(&rs, &reg, &out)))
        },
    );

    steps.run(
        "sigma-on-radical-oracle",
        "σ·(ε_α(x)ε_β(y)ε_{α+β}(z)) = ε_α(y)ε_β(x)ε_{α+β}(xy+z)",
        || {
            let lhs = word(&rs, &mut reg, "sigma·e1(x)*e2(y)*e3(z)·sigma^-1")?;
            let rhs = word(&rs, &mut reg, "e1(y)*e2(x)*e3(x*y + z)")?;
            let ok = matrix_oracle_check(&rs, &lhs, &rhs, 8, &mut rng).map_err(e)?;
            Ok(judged(
                "matrices agree",
                if ok {
                    "matrices agree"
                } else {
                    "matrices differ"
                },
                ok,
            ))
        },
    );

    steps.run(
        "curve-not-centralized",
        "ε_α(x)ε_β(x) ∉ C_G(σ)",
        || {
            let s = word(&rs, &mut reg, "sigma")?;
            let v = word(&rs, &mut reg, "e1(x)*e2(x)")?;
            let c = commutator(&rs, &s, &v).map_err(e)?;
            let lhs = s.then(&v).then(&s.inverse(&rs));
            let oracle = !matrix_oracle_check(&rs, &lhs, &v, 8, &mut rng).map_err(e)?;
            Ok(judged(
                "e3(x^2) (nonzero); oracle differs",
                format!(
                    "{}{}",
                    c.render(&rs, &reg),
                    if oracle {
                        "; oracle differs"
                    } else {
                        "; oracle agrees"
                    }
                ),
                c.render(&rs, &reg) == "e3(x^2)" && oracle,
            ))
        },
    );

    steps.run(
        "sigma-fixes-lie-vector",
        "σ·(e_α + e_β) = e_α + e_β",
        || {
            let v =
                LieVector::basis_e(&rs, rs.simple(0)).add(&LieVector::basis_e(&rs, rs.simple(1)));
            let s = word(&rs, &mut reg, "sigma")?;
            let image = adjoint_word(&rs, &s, &v).map_err(e)?;
            let at = |_v| F16::new(1);
            let x = lie_matrix::<F16>(&rs, &v, &at).map_err(e)?;
            let oracle = MatrixElement::<F16>::sigma().adjoint(&x) == x;
            Ok(judged(
                "e1 + e2; oracle fixed",
                format!(
                    "{}; oracle {}",
                    image.render(&rs, &reg),
                    if oracle { "fixed" } else { "moved" }
                ),
                image == v && oracle,
            ))
        },
    );

    steps.run(
        "m-pair",
        "(m₁, m₂)_x = v(x)·(σ, ε_{α+β}(1)) = (σε_{α+β}(x²), ε_{α+β}(1))",
        || {
            let v = word(&rs, &mut reg, "e1(x)*e2(x)")?;
            let m1 = conjugate(&rs, &v, &word(&rs, &mut reg, "sigma")?).map_err(e)?;
            let m2 = conjugate(&rs, &v, &word(&rs, &mut reg, "e3(1)")?).map_err(e)?;
            let o1 = matrix_oracle_check(
                &rs,
                &v.then(&word(&rs, &mut reg, "sigma")?).then(&v.inverse(&rs)),
                &word(&rs, &mut reg, "sigma·e3(x^2)")?,
                8,
                &mut rng,
            )
            .map_err(e)?;
            let o2 = matrix_oracle_check(
                &rs,
                &v.then(&word(&rs, &mut reg, "e3(1)")?).then(&v.inverse(&rs)),
                &word(&rs, &mut reg, "e3(1)")?,
                8,
                &mut rng,
            )
            .map_err(e)?;
            let actual = format!("({}, {})", m1.render(&rs, &reg), m2.render(&rs, &reg));
            Ok(judged(
                "(sigma·e3(x^2), e3(1)); oracle agrees",
                format!(
                    "{actual}; oracle {}",
                    if o1 && o2 { "agrees" } else { "differs" }
                ),
                actual == "(sigma·e3(x^2), e3(1))" && o1 && o2,
            ))
        },
    );

    steps.run(
        "sigma-centralizes-pair",
        "σ centralizes (m₁, m₂)_x",
        || {
            let s = word(&rs, &mut reg, "sigma")?;
            let mut ok = true;
            for m in ["sigma·e3(x^2)", "e3(1)"] {
                ok &= commutator(&rs, &s, &word(&rs, &mut reg, m)?)
                    .map_err(e)?
                    .is_identity();
            }
            Ok(judged(
                "commute",
                if ok { "commute" } else { "do not commute" },
                ok,
            ))
        },
    );

    steps.run(
        "unique-standard-parabolic",
        "P_λ = B is the only proper standard parabolic containing (m₁, m₂)_x",
        || {
            let gens = [
                word(&rs, &mut reg, "sigma·e3(x^2)")?,
                word(&rs, &mut reg, "e3(1)")?,
            ];
            let mut hits = Vec::new();
            for p in standard_parabolics(&rs) {
                if !p.data.is_proper() {
                    continue;
                }
                let mut all = true;
                for g in &gens {
                    all &= contains_word(&rs, &p.data.lambda, g).map_err(e)? == Some(true);
                }
                if all {
                    hits.push(format!(
                        "levi {{{}}}",
                        p.levi
                            .iter()
                            .map(|&i| rs.simple_name(i))
                            .collect::<Vec<_>>()
                            .join(",")
                    ));
                }
            }
            let lambda_data = rparabolic(&rs, &Cochar(vec![1, 1]));
            let b = lambda_data.l_roots.is_empty();
            Ok(judged(
                "levi {} (= P_λ)",
                format!("{}{}", hits.join("; "), if b { " (= P_λ)" } else { "" }),
                hits == ["levi {}"] && b,
            ))
        },
    );

    steps.run(
        "pairwise-non-conjugate",
        "(m₁, m₂)_a is not M-conjugate to (m₁, m₂)_b for a ≠ b",
        || {
            let (order, classes) = partition.clone();
            let singletons = classes.iter().all(|c| c.len() == 1);
            Ok(judged(
                format!("{} singleton classes", config.q),
                format!(
                    "{} classes ({}), |M(F{})| = {order}",
                    classes.len(),
                    if singletons {
                        "all singletons"
                    } else {
                        "merged"
                    },
                    config.q
                ),
                singletons && classes.len() == config.q as usize,
            ))
        },
    );

    steps.run(
        "random-oracle-words",
        "normal forms agree with 3×3 matrices",
        || {
            let mut bad = 0;
            for _ in 0..50 {
                let w = random_a2_word(&rs, &mut reg, &mut rng, 8);
                if !oracle_agrees(&rs, &reg, &w, 8, &mut rng)? {
                    bad += 1;
                }
            }
            Ok(same("0 of 50 disagree", format!("{bad} of 50 disagree")))
        },
    );

    Ok(steps.0)
}

fn d4_nonseparability() -> Vec<Step> {
    let rs = d4();
    let mut reg = Registry::standard();
    let mut steps = Steps(Vec::new());

    let e69 = |rs: &RootSystem| -> R<LieVector> {
        Ok(LieVector::basis_e(rs, rs.by_label(6).map_err(e)?)
            .add(&LieVector::basis_e(rs, rs.by_label(9).map_err(e)?)))
    };

    steps.run("lie-vector-fixed", "e6 + e9 ∈ c_g(H)", || {
        let v = e69(&rs)?;
        let mut fixed = Vec::new();
        for g in ["n[a]·sigma·e12(a)", "t[a+g](t)", "n[a]·sigma"] {
            let image = adjoint_word(&rs, &word(&rs, &mut reg, g)?, &v).map_err(e)?;
            fixed.push(image == v);
        }
        let ok = fixed.iter().all(|&b| b);
        Ok(judged(
            "fixed by every generator",
            if ok {
                "fixed by every generator"
            } else {
                "moved"
            },
            ok,
        ))
    });

    steps.run(
        "curve-adjoint",
        "Ad(ε6(x)ε9(x))(e6 + e9) = e6 + e9",
        || {
            let v = e69(&rs)?;
            let image = adjoint_word(&rs, &word(&rs, &mut reg, "e6(x)*e9(x)")?, &v).map_err(e)?;
            Ok(same(v.render(&rs, &reg), image.render(&rs, &reg)))
        },
    );

    steps.run(
        "curve-not-centralizing",
        "C(x) = {ε6(x)ε9(x)} ⊄ C_G(H)",
        || {
            let g = word(&rs, &mut reg, "n[a]·sigma")?;
            let c = word(&rs, &mut reg, "e6(x)*e9(x)")?;
            let comm = commutator(&rs, &g, &c).map_err(e)?;
            Ok(judged(
                "e12(x^2) (nonzero)",
                comm.render(&rs, &reg),
                comm.render(&rs, &reg) == "e12(x^2)",
            ))
        },
    );

    steps.run(
        "residual-polynomial",
        "(n_α σ)·(ε6(x)ε9(x)) differs from ε6(x)ε9(x) by ε12(x²)",
        || {
            let order = roots(&rs, [6, 9, 12])?;
            let x = reg.parse("x").map_err(e)?;
            let u = RadicalElement::from_coeffs(&order, vec![x.clone(), x.clone(), Poly::zero()]);
            let moved = frame_conjugate(&rs, &word(&rs, &mut reg, "n[a]·sigma")?, &u).map_err(e)?;
            let base = collect(&rs, &u.letters(), &order).map_err(e)?;
            let residual = moved.get(order[2]).cloned().unwrap_or_default()
                + base.get(order[2]).cloned().unwrap_or_default();
            Ok(judged(
                "x^2",
                reg.render(&residual),
                !residual.is_zero() && reg.render(&residual) == "x^2",
            ))
        },
    );

    steps.0
}

fn w0_combinatorics() -> Vec<Step> {
    let rs = d4();
    let a3 = RootSystem::new(Dynkin::A(3)).expect("A3 is built in");
    let mut steps = Steps(Vec::new());
    let lambda = Cochar(vec![1, 2, 1, 1]);

    let report = rs.verify_w0_identities(&[0, 2, 3], &lambda);
    steps.run(
        "d4-extension",
        "w̄0,L extends to an automorphism of G for L = L_{αγδ}",
        || {
            let r = report.as_ref().map_err(e)?;
            Ok(judged(
                "extends",
                if r.hypothesis_holds {
                    "extends"
                } else {
                    "does not extend"
                },
                r.hypothesis_holds,
            ))
        },
    );
    steps.run(
        "d4-fixes-levi",
        "w·i = i for every root i of Ψ(L)",
        || {
            let r = report.as_ref().map_err(e)?;
            let c = r.checks.get(1).ok_or("missing check")?;
            Ok(judged(
                "all 6 fixed",
                if c.holds { "all 6 fixed" } else { "some moved" },
                c.holds,
            ))
        },
    );
    steps.run("d4-swaps-radicals", "w·R_u(P_λ) = R_u(P_{−λ})", || {
        let r = report.as_ref().map_err(e)?;
        let c = r.checks.get(2).ok_or("missing check")?;
        Ok(judged(
            "onto negatives",
            if c.holds {
                "onto negatives"
            } else {
                "not onto negatives"
            },
            c.holds,
        ))
    });

    steps.run(
        "a3-levi-graph",
        "w̄0,L = n_β n_α n_β σ_L for L = L_{αβ} in A3",
        || {
            let m = a3.minus_one_realization(&[0, 1]).map_err(e)?;
            let word_ok = m.w0
                == a3.word_map(&[
                    WeylLetter::Reflect(a3.simple(1)),
                    WeylLetter::Reflect(a3.simple(0)),
                    WeylLetter::Reflect(a3.simple(1)),
                ]);
            let has_sigma = m.sigma_l.is_some();
            Ok(judged(
                "w0,L = n_b n_a n_b with nontrivial sigma_L",
                format!(
                    "w0,L {} n_b n_a n_b; sigma_L {}",
                    if word_ok { "=" } else { "!=" },
                    if has_sigma { "nontrivial" } else { "trivial" }
                ),
                word_ok && has_sigma,
            ))
        },
    );

    steps.run(
        "a3-no-extension",
        "σ_L cannot be applied to β+γ ∈ R_u(P_{αβ})",
        || {
            let m = a3.minus_one_realization(&[0, 1]).map_err(e)?;
            let ext = a3.extends_to_ambient(&m.composite);
            let bg = a3.root_of(&[0, 1, 1]).map_err(e)?;
            let outside = m
                .sigma_l
                .as_ref()
                .map(|s| s.get(bg).is_none())
                .unwrap_or(false);
            let in_radical = a3.pairing(bg, &Cochar(vec![1, 2, 3])) > 0;
            Ok(judged(
                "none; b+g in radical and outside the domain of sigma_L",
                format!(
                    "{}; b+g {} radical and {} the domain of sigma_L",
                    if ext.is_none() {
                        "none"
                    } else {
                        "extension found"
                    },
                    if in_radical { "in" } else { "not in" },
                    if outside { "outside" } else { "inside" }
                ),
                ext.is_none() && in_radical && outside,
            ))
        },
    );

    steps.run(
        "a3-hypothesis-fails",
        "the extension hypothesis is necessary",
        || {
            let r = a3
                .verify_w0_identities(&[0, 1], &Cochar(vec![1, 2, 3]))
                .map_err(e)?;
            Ok(judged(
                "hypothesis fails",
                if r.hypothesis_holds {
                    "hypothesis holds"
                } else {
                    "hypothesis fails"
                },
                !r.hypothesis_holds,
            ))
        },
    );

    steps.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_scenario_lists_names() {
        let err = run_scenario("nope", &RunConfig::default()).unwrap_err();
        let msg = err.to_string();
        for n in SCENARIOS {
            assert!(msg.contains(n));
        }
    }

    #[test]
    fn cycle_notation_of_n_alpha_sigma() {
        let rs = d4();
        let labels: Vec<i32> = (4..=12).collect();
        assert_eq!(
            cycle_notation(&rs, &n_alpha_sigma_letters(&rs), &labels).unwrap(),
            "(4 5 8 11 10 7)(6 9)(12)"
        );
    }

    #[test]
    fn bad_field_size() {
        let cfg = RunConfig {
            q: 8,
            ..RunConfig::default()
        };
        assert_eq!(
            run_scenario("a2-conjugacy", &cfg),
            Err(ScenarioError::FieldSize(8))
        );
    }
}
