//! Executable verification suites with deterministic JSON reports.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cocycle::OneChain;
use crate::cyclo::CycloSum;
use crate::groupalg::{GroupAlgebra, ALGEBRA_BUDGET};
use crate::lazard::{group_cocycle, group_of, lemma_identities, lie_cocycles, lie_ring_of, rename};
use crate::nilgroup::{Class2Group, GroupElement};
use crate::oracle::{burnside_table, match_tables};
use crate::orbits::{Orbit, OrbitMethod};

/// Groups up to this order are checked on all pairs (or triples).
pub const EXHAUSTIVE_LIMIT: usize = 243;
/// Pairs checked when a group is too large for exhaustive sweeps.
pub const SAMPLES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Cocycle,
    Lazard,
    Orbits,
    Groupalg,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cocycle" => Ok(Suite::Cocycle),
            "lazard" => Ok(Suite::Lazard),
            "orbits" => Ok(Suite::Orbits),
            "groupalg" => Ok(Suite::Groupalg),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite {s:?}")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Cocycle => "cocycle",
            Suite::Lazard => "lazard",
            Suite::Orbits => "orbits",
            Suite::Groupalg => "groupalg",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub skipped: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub order: u64,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// `Ok(note)` passes with an optional note; `Err(witness)` fails.
type Outcome = Result<Option<String>, String>;

struct Recorder {
    suite: Suite,
    checks: Vec<Check>,
}

impl Recorder {
    fn record(&mut self, name: &'static str, outcome: Outcome) {
        let (passed, witness) = match outcome {
            Ok(note) => (true, note),
            Err(w) => (false, Some(w)),
        };
        self.checks.push(Check { suite: self.suite, name, passed, skipped: false, witness });
    }

    fn skip(&mut self, name: &'static str, reason: String) {
        self.checks.push(Check { suite: self.suite, name, passed: true, skipped: true, witness: Some(reason) });
    }
}

fn ensure(ok: bool, witness: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(None)
    } else {
        Err(witness())
    }
}

/// Index pairs: all of them for small groups, otherwise seeded samples.
fn pairs(n: usize, seed: u64) -> Vec<(usize, usize)> {
    if n <= EXHAUSTIVE_LIMIT {
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..SAMPLES).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect()
    }
}

pub fn verify(group: &Class2Group, suite: Suite, seed: u64) -> VerifyReport {
    let suites: Vec<Suite> = match suite {
        Suite::All => vec![Suite::Cocycle, Suite::Lazard, Suite::Orbits, Suite::Groupalg],
        s => vec![s],
    };
    let mut checks = Vec::new();
    for s in suites {
        let mut rec = Recorder { suite: s, checks: Vec::new() };
        match s {
            Suite::Cocycle => cocycle_suite(group, seed, &mut rec),
            Suite::Lazard => lazard_suite(group, seed, &mut rec),
            Suite::Orbits => orbits_suite(group, seed, &mut rec),
            Suite::Groupalg => groupalg_suite(group, seed, &mut rec),
            Suite::All => unreachable!(),
        }
        checks.extend(rec.checks);
    }
    let passed = checks.iter().all(|c| c.passed);
    VerifyReport { suite, order: group.order(), seed, checks, passed }
}

fn cocycle_suite(group: &Class2Group, seed: u64, rec: &mut Recorder) {
    rec.record("cocycle_identity", group.raw_psi().validate().map(|_| None).map_err(|v| v.to_string()));
    rec.record(
        "centered_identity",
        ensure(group.psi().is_centered() && group.elements().all(|x| group.mul(&group.identity(), &x) == x), || {
            "(0,0) is not the identity".into()
        }),
    );
    rec.record(
        "associativity",
        match group.check_associativity(EXHAUSTIVE_LIMIT, SAMPLES, seed) {
            None => Ok(None),
            Some([i, j, k]) => Err(format!("({}, {}, {})", group.element(i), group.element(j), group.element(k))),
        },
    );
    rec.record(
        "class_at_most_two",
        ensure(group.class_at_most_two(), || "a commutator is not central".into()),
    );
    if group.strict_center() {
        rec.record("strict_center", group.check_strict_center().map(|_| None).map_err(|e| e.to_string()));
    }

    // Equalizing gives inverse = negation, and the renaming by the
    // normalizing chain is an isomorphism from the raw-cocycle group.
    let equalized = match group.raw_psi().equalize() {
        Ok(n) => n,
        Err(e) => {
            rec.record("equalize", Err(e.to_string()));
            return;
        }
    };
    let eq_group = Class2Group::new(equalized.cocycle.clone());
    let eq_group = match eq_group {
        Ok(g) => g,
        Err(e) => {
            rec.record("equalize", Err(e.to_string()));
            return;
        }
    };
    rec.record(
        "equalized_inverse_is_negation",
        match eq_group.elements().find(|x| {
            eq_group.inv(x) != GroupElement::new(eq_group.a().neg(&x.a), eq_group.c().neg(&x.c))
        }) {
            None => Ok(None),
            Some(x) => Err(x.to_string()),
        },
    );
    let q: &OneChain = &equalized.chain;
    let a = group.a();
    let raw: Vec<GroupElement> = group.elements().collect();
    let bad = pairs(group.size(), seed).into_par_iter().find_first(|&(i, j)| {
        let (x, y) = (&raw[i], &raw[j]);
        rename(a, q, &group.raw_mul(x, y)) != eq_group.mul(&rename(a, q, x), &rename(a, q, y))
    });
    rec.record(
        "normalization_is_isomorphism",
        match bad {
            None => Ok(None),
            Some((i, j)) => Err(format!("({}, {})", raw[i], raw[j])),
        },
    );
}

fn lazard_suite(group: &Class2Group, seed: u64, rec: &mut Recorder) {
    let ring = match lie_ring_of(group) {
        Ok(r) => r,
        Err(e) => {
            rec.record("lie_ring", Err(e.to_string()));
            return;
        }
    };
    for (name, psi) in [("cocycle_round_trip", group.psi()), ("raw_cocycle_round_trip", group.raw_psi())] {
        let outcome = (|| -> Outcome {
            let (phi, eta) = lie_cocycles(psi).map_err(|e| e.to_string())?;
            let back = group_cocycle(&phi, &eta).map_err(|e| e.to_string())?;
            if back != *psi {
                return Err("E_c(L_c(ψ)) ≠ ψ".into());
            }
            let (phi2, eta2) = lie_cocycles(&back).map_err(|e| e.to_string())?;
            ensure(phi2 == phi && eta2 == eta, || "L_c(E_c(φ, η)) ≠ (φ, η)".into())
        })();
        rec.record(name, outcome);
    }
    rec.record(
        "group_round_trip",
        match group_of(&ring) {
            Err(e) => Err(e.to_string()),
            Ok(back) => match (back.mul_table(), group.mul_table()) {
                (Some(x), Some(y)) => ensure(x == y, || "E(L(B)) multiplication differs".into()),
                _ => {
                    let bad = pairs(group.size(), seed)
                        .into_par_iter()
                        .find_first(|&(i, j)| back.mul_idx(i, j) != group.mul_idx(i, j));
                    ensure(bad.is_none(), || format!("E(L(B)) multiplication differs at {bad:?}"))
                }
            },
        },
    );
    rec.record(
        "lie_identities",
        match lemma_identities(group, 729, SAMPLES, seed) {
            Ok(r) => Ok(Some(format!(
                "{} pairs ({})",
                r.pairs_checked,
                if r.exhaustive { "all" } else { "sampled" }
            ))),
            Err(e) => Err(e.to_string()),
        },
    );
    rec.record(
        "halving_is_square_root",
        match group.elements().find(|x| group.half_element(x).ok() != ring.halve(x).ok()) {
            None => Ok(None),
            Some(x) => Err(x.to_string()),
        },
    );

    // L(B) built from a cohomologous representative is the renamed ring.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = OneChain::random(group.c(), group.a(), &mut rng, true);
    let outcome = match Class2Group::new(group.psi().add_coboundary(&q)).map_err(|e| e.to_string()).and_then(|g2| {
        lie_ring_of(&g2).map_err(|e| e.to_string())
    }) {
        Err(e) => Err(e),
        Ok(ring2) => {
            let a = group.a();
            let elems: Vec<GroupElement> = group.elements().collect();
            let bad = pairs(group.size(), seed).into_par_iter().find_first(|&(i, j)| {
                let (x, y) = (&elems[i], &elems[j]);
                let (rx, ry) = (rename(a, &q, x), rename(a, &q, y));
                ring2.add(&rx, &ry) != rename(a, &q, &ring.add(x, y))
                    || ring2.bracket(&rx, &ry) != rename(a, &q, &ring.bracket(x, y))
            });
            ensure(bad.is_none(), || format!("renaming fails at {bad:?}"))
        }
    };
    rec.record("representative_independence", outcome);
}

fn orbits_suite(group: &Class2Group, seed: u64, rec: &mut Recorder) {
    let method = match OrbitMethod::new(group) {
        Ok(m) => m,
        Err(e) => {
            rec.record("additive_structure", Err(e.to_string()));
            return;
        }
    };
    rec.record("additive_structure", Ok(Some(format!("G = {:?}", method.additive().group().moduli()))));
    let n = group.size();
    let elems: Vec<GroupElement> = group.elements().collect();

    let bad = pairs(n, seed)
        .into_par_iter()
        .find_first(|&(i, j)| method.ad(&elems[i], &elems[j]) != method.ad_by_conjugation(&elems[i], &elems[j]));
    rec.record("ad_formulas_agree", ensure(bad.is_none(), || format!("at {bad:?}")));

    // coad of every element as a permutation of character indices
    let table: Vec<Vec<u32>> = elems.par_iter().map(|b| method.coad_permutation(b)).collect();
    let module_law = if n <= EXHAUSTIVE_LIMIT {
        (0..n).into_par_iter().find_map_first(|i| {
            (0..n).find_map(|j| {
                let ij = group.mul_idx(i, j);
                (0..n).find(|&k| table[i][table[j][k] as usize] != table[ij][k]).map(|k| (i, j, k))
            })
        })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let triples: Vec<(usize, usize, usize)> =
            (0..SAMPLES).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        triples.into_par_iter().find_first(|&(i, j, k)| table[i][table[j][k] as usize] != table[group.mul_idx(i, j)][k])
    };
    rec.record("coad_module_law", ensure(module_law.is_none(), || format!("at {module_law:?}")));

    let chars: Vec<_> = method.characters().collect();
    let gens = group.generators();
    let bad = gens.iter().find(|b| !chars.par_iter().all(|chi| method.coad_by_definition_matches(b, chi)));
    rec.record("coad_matches_definition", ensure(bad.is_none(), || format!("generator {}", bad.unwrap())));

    let bad = (0..n).into_par_iter().find_first(|&x| {
        let chi = &chars[x];
        (0..n).any(|b| method.in_stabilizer(chi, &elems[b]) != (table[b][x] as usize == x))
    });
    rec.record("stabilizer_definitions_agree", ensure(bad.is_none(), || format!("χ = {}", chars[bad.unwrap()])));

    let orbits = method.enumerate_orbits();
    let bad = orbits.iter().find(|o| !method.stabilizer_lemma_holds(o));
    rec.record("stabilizer_constant_on_orbits", ensure(bad.is_none(), || format!("orbit of {}", bad.unwrap().representative())));

    let bad = orbits.iter().find(|o| o.dimension().is_err());
    rec.record("orbit_sizes_are_squares", ensure(bad.is_none(), || format!("orbit of size {}", bad.unwrap().size())));
    let total: usize = orbits.iter().map(Orbit::size).sum();
    rec.record("orbit_sizes_sum_to_order", ensure(total == n, || format!("Σ #Ω = {total}")));

    rec.record(
        "duality_counts",
        match method.duality_count_check() {
            Ok(r) => Ok(Some(format!("{} orbits", r.coad_orbits))),
            Err(e) => Err(e.to_string()),
        },
    );

    let table = match method.character_table() {
        Ok(t) => t,
        Err(e) => {
            rec.record("character_table", Err(e.to_string()));
            return;
        }
    };
    let bad = orbits.iter().find(|o| {
        let d = method.dual_orbit(o);
        !orbits.contains(&d)
            || table.class_reps.iter().any(|b| {
                method.orbit_character(&d, b).ok() != method.orbit_character(o, b).ok().map(|v| v.conj())
            })
    });
    rec.record("dual_orbit_is_conjugate", ensure(bad.is_none(), || format!("orbit of {}", bad.unwrap().representative())));
    rec.record(
        "first_orthogonality",
        match table.first_orthogonality_violation() {
            None => Ok(None),
            Some((i, j)) => Err(format!("rows {i}, {j}")),
        },
    );
    rec.record("degree_sum", ensure(table.degree_sum_matches(), || "Σ n² ≠ |B|".into()));
    rec.record(
        "oracle_match",
        match burnside_table(group, seed).map_err(|e| e.to_string()).and_then(|o| {
            match_tables(&table, &o).map_err(|e| e.to_string())
        }) {
            Ok(r) => Ok(Some(format!("max deviation {:.1e}", r.max_deviation))),
            Err(e) => Err(e),
        },
    );
}

fn groupalg_suite(group: &Class2Group, seed: u64, rec: &mut Recorder) {
    if group.order() > ALGEBRA_BUDGET {
        rec.skip("group_algebra", format!("order {} exceeds the budget {ALGEBRA_BUDGET}", group.order()));
        return;
    }
    let method = match OrbitMethod::new(group) {
        Ok(m) => m,
        Err(e) => {
            rec.record("group_algebra", Err(e.to_string()));
            return;
        }
    };
    let alg = match GroupAlgebra::new(&method) {
        Ok(a) => a,
        Err(e) => {
            rec.record("group_algebra", Err(e.to_string()));
            return;
        }
    };
    rec.record("xbasis_orthonormal", alg.build_xbasis().map(|_| None).map_err(|e| e.to_string()));

    let elems: Vec<GroupElement> = group.elements().collect();
    let chars: Vec<_> = method.characters().collect();
    let bad = (0..elems.len()).into_par_iter().find_map_first(|i| {
        chars.iter().find_map(|chi| {
            alg.left_action(&elems[i], chi).and_then(|_| alg.right_action(chi, &elems[i])).err()
        })
    });
    rec.record("action_closed_forms", ensure(bad.is_none(), || bad.unwrap().to_string()));

    let orbits = method.enumerate_orbits();
    let bad = orbits.iter().find_map(|o| alg.verify_ideal(o, &orbits, 4, seed).err());
    rec.record("orbit_spans_are_ideals", ensure(bad.is_none(), || bad.unwrap().to_string()));

    let classes = group.conjugacy_classes();
    let mut trace_failure = None;
    let mut class_failure = None;
    for o in &orbits {
        let traces: Result<Vec<CycloSum>, _> = elems.par_iter().map(|g| alg.regular_trace(o, g)).collect();
        let traces = match traces {
            Ok(t) => t,
            Err(e) => {
                trace_failure.get_or_insert(e.to_string());
                continue;
            }
        };
        let d = o.dimension().unwrap_or(0) as i64;
        let e = method.root_order();
        for (g, t) in elems.iter().zip(&traces) {
            let expected = method.orbit_character(o, g).map(|v| v.to_sum(e)).ok();
            if d == 0 || t.div_exact(d) != expected {
                trace_failure.get_or_insert(format!("orbit of {} at {g}", o.representative()));
            }
        }
        for k in &classes.classes {
            if k.iter().any(|&i| traces[i] != traces[k[0]]) {
                class_failure.get_or_insert(format!("orbit of {} on class of {}", o.representative(), elems[k[0]]));
            }
        }
    }
    rec.record("regular_trace_is_character", trace_failure.map_or(Ok(None), Err));
    rec.record("regular_trace_is_class_function", class_failure.map_or(Ok(None), Err));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilgroup::Catalog;

    #[test]
    fn heisenberg_passes_all() {
        let r = verify(&Catalog::heisenberg(3).unwrap(), Suite::All, 0);
        assert!(r.passed, "{}", r.to_json());
        assert!(r.checks.len() > 20);
    }

    #[test]
    fn large_group_skips_algebra() {
        let r = verify(&Catalog::heisenberg(7).unwrap(), Suite::Groupalg, 0);
        assert!(r.passed && r.checks[0].skipped);
    }

    #[test]
    fn suite_names() {
        for s in ["cocycle", "lazard", "orbits", "groupalg", "all"] {
            assert_eq!(s.parse::<Suite>().unwrap().to_string(), s);
        }
        assert!("x".parse::<Suite>().is_err());
    }
}
