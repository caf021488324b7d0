#![allow(dead_code)]

use obtea_core::world::{parse_domain, AtomId, ConditionSet, Domain, Lit, WorldState};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Instance {
    pub domain: Domain,
    pub s0: WorldState,
    pub goals: Vec<ConditionSet>,
}

fn lit_text(atom: usize, negated: bool) -> String {
    format!("{}L{atom}", if negated { "!" } else { "" })
}

/// Random propositional domain over `L0..L{n-1}` with negative preconditions
/// and goal literals, and costs in halves.
pub fn random_instance(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(3..=7usize);
    let m = rng.gen_range(2..=12usize);
    let mut text = String::from("[objects]\nX : t\n[predicates]\n");
    for i in 0..n {
        text.push_str(&format!("L{i}\n"));
    }
    text.push_str("[actions]\n");
    let atoms: Vec<usize> = (0..n).collect();
    for k in 0..m {
        let mut shuffled = atoms.clone();
        shuffled.shuffle(&mut rng);
        let n_pre = rng.gen_range(0..=2usize.min(n));
        let pre: Vec<String> = shuffled[..n_pre]
            .iter()
            .map(|&a| lit_text(a, rng.gen_bool(0.25)))
            .collect();
        shuffled.shuffle(&mut rng);
        let n_add = rng.gen_range(1..=2usize);
        let n_del = rng.gen_range(0..=1usize).min(n - n_add);
        let add = &shuffled[..n_add];
        let del = &shuffled[n_add..n_add + n_del];
        text.push_str(&format!("A{k}\n"));
        if !pre.is_empty() {
            text.push_str(&format!("  pre: {}\n", pre.join(" & ")));
        }
        let join = |v: &[usize]| {
            v.iter()
                .map(|&a| format!("L{a}"))
                .collect::<Vec<_>>()
                .join(" & ")
        };
        text.push_str(&format!("  add: {}\n", join(add)));
        if !del.is_empty() {
            text.push_str(&format!("  del: {}\n", join(del)));
        }
        let halves = rng.gen_range(1..=20u32);
        text.push_str(&format!("  cost: {}\n", f64::from(halves) / 2.0));
    }
    let domain = parse_domain(&text).unwrap();
    let s0 = WorldState::from_atoms(
        (0..n)
            .filter(|_| rng.gen_bool(0.3))
            .map(|i| AtomId(i as u32)),
    );
    let n_goals = rng.gen_range(1..=3usize);
    let goals = (0..n_goals)
        .map(|_| {
            let mut shuffled = atoms.clone();
            shuffled.shuffle(&mut rng);
            let size = rng.gen_range(1..=3usize.min(n));
            shuffled[..size]
                .iter()
                .map(|&a| Lit::new(AtomId(a as u32), rng.gen_bool(0.2)))
                .collect()
        })
        .collect();
    Instance { domain, s0, goals }
}
