use std::sync::OnceLock;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tilecomplex::geodesy::distances_from;
use tilecomplex::io::{export_json, import_json};
use tilecomplex::path::{
    apply_move, format_moves, format_path, local_moves, parse_moves, parse_path, reduce_to_null, replay, Move, Path,
    SearchBudget,
};
use tilecomplex::verify::{parse_selection, LemmaId};
use tilecomplex::{build, Complex, VertexId};

fn complex() -> &'static Complex {
    static C: OnceLock<Complex> = OnceLock::new();
    C.get_or_init(|| build(4).unwrap())
}

/// A random walk without immediate backtracks.
fn walk(c: &Complex, seed: u64, len: usize) -> Path {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = vec![VertexId((seed % c.num_vertices() as u64) as u32)];
    while v.len() <= len {
        let cur = *v.last().unwrap();
        let prev = v.len().checked_sub(2).map(|i| v[i]);
        let opts: Vec<VertexId> = c.neighbors(cur).iter().map(|&(w, _)| w).filter(|&w| Some(w) != prev).collect();
        v.push(*opts.choose(&mut rng).unwrap());
    }
    Path::new(c, v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn every_move_is_undone_by_its_reverse(seed in any::<u64>(), len in 2usize..12) {
        let c = complex();
        let p = walk(c, seed, len);
        for m in local_moves(c, &p) {
            let q = apply_move(c, &p, &m).unwrap();
            prop_assert_eq!(q.len(), p.len());
            prop_assert_eq!((q.first(), q.last()), (p.first(), p.last()));
            let back = Move { from: m.to, to: m.from, ..m };
            prop_assert_eq!(apply_move(c, &q, &back).unwrap(), p.clone());
        }
    }

    #[test]
    fn paths_and_moves_survive_text(seed in any::<u64>(), len in 1usize..15, steps in 0usize..6) {
        let c = complex();
        let p = walk(c, seed, len);
        prop_assert_eq!(parse_path(c, &format_path(&p)).unwrap(), p.clone());
        let mut moves = Vec::new();
        let mut cur = p.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..steps {
            let opts = local_moves(c, &cur);
            let Some(m) = opts.choose(&mut rng) else { break };
            cur = apply_move(c, &cur, m).unwrap();
            moves.push(*m);
        }
        prop_assert_eq!(parse_moves(c, &p, &format_moves(&moves)).unwrap(), moves.clone());
        prop_assert_eq!(replay(c, &p, &moves).unwrap().pop().unwrap(), cur);
    }

    #[test]
    fn neighbours_differ_in_distance_by_at_most_one(seed in any::<u64>()) {
        let c = complex();
        let a = VertexId((seed % c.num_vertices() as u64) as u32);
        let d = distances_from(c, &[a]);
        for v in c.vertices() {
            for &(w, _) in c.neighbors(v.id) {
                prop_assert!(d[v.id.index()].abs_diff(d[w.index()]) <= 1);
            }
        }
        let b = VertexId(((seed >> 20) % c.num_vertices() as u64) as u32);
        prop_assert_eq!(distances_from(c, &[b])[a.index()], d[b.index()]);
    }

    #[test]
    fn found_reductions_end_in_a_backtrack(seed in any::<u64>(), len in 3usize..9) {
        let c = complex();
        let p = walk(c, seed, len);
        let r = reduce_to_null(c, &p, SearchBudget::new(20_000));
        if let Some(moves) = r.moves {
            let last = replay(c, &p, &moves).unwrap().pop().unwrap();
            prop_assert!(last.backtrack().is_some());
        }
        if r.complete {
            prop_assert!(r.visited <= 20_000);
        }
    }

    #[test]
    fn lemma_selections_round_trip(mask in 1u32..(1 << 14)) {
        let chosen: Vec<LemmaId> = LemmaId::ALL.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, l)| *l).collect();
        let text: Vec<&str> = chosen.iter().rev().map(|l| l.code()).collect();
        prop_assert_eq!(parse_selection(&text.join(",")).unwrap(), chosen);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn documents_round_trip(level in 1u32..5) {
        let c = build(level).unwrap();
        let text = export_json(&c).unwrap();
        let d = import_json(&text).unwrap();
        prop_assert_eq!(export_json(&d).unwrap(), text);
        prop_assert!(d.validate().is_ok());
        for v in c.vertices() {
            let mut a: Vec<_> = c.neighbors(v.id).to_vec();
            let mut b: Vec<_> = d.neighbors(v.id).to_vec();
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
        }
    }
}
