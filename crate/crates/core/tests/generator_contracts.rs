use proptest::prelude::*;
use resdist::blocks;
use resdist::generators::{self, GenKind, GenSpec, PieceKind};
use resdist::io::{self, GraphFormat};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cactus_blocks_are_cycles(nb in 1usize..=6, lo in 2usize..=4, extra in 0usize..=3, seed in any::<u64>()) {
        let d = generators::gen_cactus(nb, lo, lo + extra, seed).unwrap();
        prop_assert!(d.is_balanced() && d.is_strongly_connected());
        prop_assert!(blocks::is_directed_cactus(&d));
        let dec = blocks::blocks(&d).unwrap();
        prop_assert_eq!(dec.blocks.len(), nb);
        for b in &dec.blocks {
            prop_assert!(b.is_directed_cycle());
            prop_assert!((lo..=lo + extra).contains(&b.vertices.len()));
        }
    }

    #[test]
    fn balanced_random_respects_budget(n in 2usize..=12, slack in 0usize..=12, seed in any::<u64>()) {
        let target = (n + slack).min(n * (n - 1));
        let d = generators::gen_balanced_random(n, target, seed).unwrap();
        prop_assert_eq!(d.n(), n);
        prop_assert!(d.arc_count() <= target);
        prop_assert!(d.is_balanced() && d.is_strongly_connected());
    }

    #[test]
    fn same_spec_same_bytes(nb in 1usize..=4, seed in any::<u64>()) {
        let spec = GenSpec {
            kind: GenKind::ClassCUnion {
                blocks: nb,
                piece: PieceKind::BalancedRandom { min_n: 3, max_n: 5, arc_factor_pct: 150 },
            },
            seed,
        };
        let json = serde_json::to_string(&spec).unwrap();
        let again: GenSpec = serde_json::from_str(&json).unwrap();
        let a = io::emit(&spec.generate().unwrap(), GraphFormat::Json);
        let b = io::emit(&again.generate().unwrap(), GraphFormat::Json);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn class_c_pieces_partition_arcs(nb in 1usize..=5, seed in any::<u64>()) {
        let u = generators::gen_class_c(
            nb,
            PieceKind::BalancedRandom { min_n: 2, max_n: 5, arc_factor_pct: 200 },
            seed,
        ).unwrap();
        prop_assert_eq!(u.pieces.len(), nb);
        prop_assert_eq!(u.glue_vertices.len(), nb - 1);
        let total: usize = u.pieces.iter().map(Vec::len).sum();
        prop_assert_eq!(total, u.graph.arc_count());
        prop_assert!(blocks::class_c_certificate(&u.graph, |_| true).unwrap().is_certified());
    }
}

#[test]
fn spec_json_shape() {
    let spec: GenSpec = serde_json::from_str(
        r#"{"kind": "cactus", "blocks": 3, "min_len": 2, "max_len": 4, "seed": 7}"#,
    )
    .unwrap();
    assert_eq!(
        spec.kind,
        GenKind::Cactus {
            blocks: 3,
            min_len: 2,
            max_len: 4
        }
    );
    let spec: GenSpec = serde_json::from_str(
        r#"{"kind": "class_c_union", "blocks": 2, "piece": "cycle", "min_len": 3, "max_len": 3}"#,
    )
    .unwrap();
    assert_eq!(spec.seed, 0);
    assert_eq!(spec.generate().unwrap().n(), 5);
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(generators::gen_balanced_random(4, 3, 0).is_err());
    assert!(generators::gen_balanced_random(4, 13, 0).is_err());
    assert!(generators::gen_cactus(0, 2, 3, 0).is_err());
    assert!(generators::gen_cactus(2, 1, 3, 0).is_err());
    assert!(generators::gen_cactus(2, 4, 3, 0).is_err());
}
