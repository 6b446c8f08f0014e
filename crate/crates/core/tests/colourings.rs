use dw_core::colouring::{enumerate_colourings, enumerate_colourings_with, Search};
use dw_core::moves::{l_move, l_sites, t_move, t_sites, transport_colouring};
use dw_core::spine::{catalog, cyclic_pi1_order, CATALOG};
use dw_core::{Colouring, FiniteGroup};
use proptest::prelude::*;

fn groups() -> Vec<FiniteGroup> {
    ["Z2", "Z3", "Z4", "Z5", "Z2xZ2", "D3", "D4", "Z8"]
        .iter()
        .map(|g| FiniteGroup::parse_spec(g).unwrap())
        .collect()
}

#[test]
fn counts_match_homomorphisms_from_cyclic_groups() {
    for name in CATALOG {
        let Some(p) = cyclic_pi1_order(name) else { continue };
        let s = catalog(name).unwrap();
        for g in groups() {
            let n = enumerate_colourings(&s, &g).unwrap().len();
            assert_eq!(n, g.count_roots_of_unity(p as usize), "{name} {}", g.name());
        }
    }
}

#[test]
fn three_sphere_has_only_the_trivial_colouring() {
    let s = catalog("S3").unwrap();
    for g in groups() {
        let all = enumerate_colourings(&s, &g).unwrap();
        assert_eq!(all, vec![Colouring::trivial(&s, &g)]);
    }
}

#[test]
fn pruned_equals_full_scan_for_small_groups() {
    for name in CATALOG {
        let s = catalog(name).unwrap();
        for g in ["Z2", "Z3", "Z4", "Z2xZ2"] {
            let g = FiniteGroup::parse_spec(g).unwrap();
            assert_eq!(
                enumerate_colourings_with(&s, &g, Search::Pruned).unwrap(),
                enumerate_colourings_with(&s, &g, Search::BruteForce).unwrap()
            );
        }
    }
}

#[test]
fn moves_preserve_counts_everywhere() {
    for name in CATALOG {
        let s = catalog(name).unwrap();
        for g in ["Z2", "Z3", "Z4", "Z2xZ2", "D3"] {
            let g = FiniteGroup::parse_spec(g).unwrap();
            let before = enumerate_colourings(&s, &g).unwrap();
            let mut results = vec![];
            for e in t_sites(&s).unwrap() {
                results.push(t_move(&s, &e).unwrap());
            }
            for (c, pos) in l_sites(&s).unwrap() {
                results.push(l_move(&s, &c, pos).unwrap());
            }
            for r in results {
                let after = enumerate_colourings(&r.spine_after, &g).unwrap();
                let mut image: Vec<_> = before
                    .iter()
                    .map(|x| transport_colouring(&r, &g, x).unwrap())
                    .collect();
                image.sort();
                assert_eq!(image, after, "{name} {}", g.name());
                assert_eq!(
                    r.spine_after.validate().euler_characteristic(),
                    s.validate().euler_characteristic()
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reversing_a_cell_inverts_its_colour(idx in 0usize..7, cell in 0usize..8, g in 0usize..8) {
        let s = catalog(CATALOG[idx]).unwrap();
        let cell = cell % s.cells.len();
        let g = &groups()[g];
        let r = s.reverse_cell(&s.cells[cell]).unwrap();
        let mut flipped: Vec<Colouring> = enumerate_colourings(&s, g).unwrap().into_iter().map(|mut x| {
            x.values[cell] = g.inv(x.values[cell]);
            x
        }).collect();
        flipped.sort();
        prop_assert_eq!(flipped, enumerate_colourings(&r, g).unwrap());
    }

    #[test]
    fn reversing_an_edge_keeps_the_colourings(idx in 0usize..7, edge in 0usize..16, g in 0usize..8) {
        let s = catalog(CATALOG[idx]).unwrap();
        let edge = &s.edges[edge % s.edges.len()].id;
        let g = &groups()[g];
        let r = s.reverse_edge(edge).unwrap();
        prop_assert_eq!(enumerate_colourings(&s, g).unwrap(), enumerate_colourings(&r, g).unwrap());
    }

    #[test]
    fn json_round_trip(idx in 0usize..7, v in 0usize..8, tau in Just([0usize, 1, 2, 3]).prop_shuffle()) {
        let s = catalog(CATALOG[idx]).unwrap();
        let v = &s.vertices[v % s.vertices.len()].id;
        let t = s.reorder_vertex(v, tau).unwrap();
        prop_assert_eq!(dw_core::Spine::load(&t.to_json()).unwrap(), t);
    }
}
