use std::collections::BTreeMap;

use super::*;
use crate::connectivity::{bridges_of, Sub};
use crate::nets::{builtin_families, is_forward};
use crate::tutte::{verify_sdr, verify_tutte};

fn fam(name: &str) -> crate::nets::FamilyGen {
    builtin_families(name, &BTreeMap::new(), 7).unwrap()
}

#[test]
fn radial_base_case() {
    let f = fam("radial-triangular");
    let net = f.level(1).unwrap().net.unwrap();
    for &u in net.c(1) {
        let (v, p, s) = radial_construct(&f, u, 1).unwrap();
        assert_eq!((v, p.clone()), (u, vec![u]));
        assert_eq!(s.reps().into_iter().collect::<Vec<_>>(), vec![u]);
    }
}

#[test]
fn radial_families_verify() {
    for name in ["radial-triangular", "radial-hex", "bipartite-radial", "random-tight-radial"] {
        let f = fam(name);
        for k in 2..=5 {
            let net = f.level(k).unwrap().net.unwrap();
            for &u in net.c(1) {
                let run = radial_in_net(&net, u).unwrap_or_else(|e| panic!("{name} k={k} u={u}: {e}"));
                let t = Sub::from_path(&run.path);
                assert!(verify_tutte(&net.carrier, &Sub::from_cycle(net.c(1)), &t).is_ok());
                assert!(verify_sdr(&net.carrier, &t, &run.sdr));
                assert!(is_forward(&run.path, &net));
                assert!(net.c(k).contains(&run.v));
                assert_eq!(run.path[0], u);
                // bridges with an edge of C_1 have at most two attachments
                let c1 = Sub::from_cycle(net.c(1));
                for b in bridges_of(&net.carrier, &t) {
                    if b.edge_set.iter().any(|e| c1.edges.contains(e)) {
                        assert!(b.attachments.len() <= 2);
                    }
                }
            }
        }
    }
}

#[test]
fn ladder_base_case() {
    let f = fam("ladder-square");
    let net = f.level(2).unwrap().net.unwrap();
    let run = ladder_in_net(&net, 2, 2, Side::X).unwrap();
    assert_eq!(run.path, net.d(2).to_vec());
    assert!(run.sdr.assignment.is_empty());
}

#[test]
fn ladder_families_verify() {
    for name in ["ladder-square", "ladder-triangular", "bipartite-ladder", "random-tight-ladder"] {
        let f = fam(name);
        let net = f.level(5).unwrap().net.unwrap();
        for s in 0..=5 {
            for r in 0..=s {
                for side in [Side::X, Side::Y] {
                    let run = ladder_in_net(&net, r, s, side)
                        .unwrap_or_else(|e| panic!("{name} r={r} s={s} {side:?}: {e}"));
                    let (start, end) = match side {
                        Side::X => (net.x[r], if (s - r) % 2 == 0 { net.y[s] } else { net.x[s] }),
                        Side::Y => (net.y[r], if (s - r) % 2 == 0 { net.x[s] } else { net.y[s] }),
                    };
                    assert_eq!((run.path[0], *run.path.last().unwrap()), (start, end));
                }
            }
        }
    }
}

#[test]
fn chain_levels_verify() {
    let f = fam("chain-blocks-2apex");
    for k in 1..=4 {
        let lvl = f.level(k).unwrap();
        let (u, v) = (lvl.apex[0], lvl.apex[1]);
        let run = chain_in_level(&lvl, u, v).unwrap_or_else(|e| panic!("k={k}: {e}"));
        let ch = lvl.chain.as_ref().unwrap();
        assert_eq!(run.path[0], u);
        assert!(run.path.contains(&v));
        assert_eq!(run.path.last(), ch.cuts.last());
        let t = Sub::from_path(&run.path);
        assert!(verify_sdr(&ch.host, &t, &run.host_sdr));
        assert!(verify_sdr(&lvl.graph, &t, &run.sdr));
    }
}

#[test]
fn chain_rejects_other_ends() {
    let f = fam("chain-blocks-2apex");
    let lvl = f.level(2).unwrap();
    assert!(chain_in_level(&lvl, lvl.apex[1], lvl.apex[0]).is_err());
}

#[test]
fn apex_ladder_verifies_with_apex_edges() {
    let f = fam("apex-ladder");
    for k in 1..=4 {
        let lvl = f.level(k).unwrap();
        let run = ladder_in_level(&lvl, 0, k, Side::X).unwrap_or_else(|e| panic!("k={k}: {e}"));
        assert_eq!(run.path[0], lvl.apex[0]);
        assert!(verify_sdr(&lvl.graph, &Sub::from_path(&run.path), &run.sdr));
    }
}


#[test]
fn limit_needs_four_levels() {
    assert!(matches!(limit_experiment(&fam("radial-triangular"), 3), Err(crate::error::Error::InsufficientLevels(3))));
}

#[test]
fn limit_report_invariants() {
    for name in ["radial-triangular", "ladder-square"] {
        let rep = limit_experiment(&fam(name), 6).unwrap();
        eprintln!("{name}: {}", serde_json::to_string(&rep).unwrap());
        assert!(!rep.levels.is_empty());
        assert!(rep.prefixes_nested && rep.sigma_extends && rep.bridges_agree);
    }
}

