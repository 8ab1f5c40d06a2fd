mod common;

use common::{adjacency, non_auxiliary_mass, power_iteration, random_walk_alpha, uniform};
use num_traits::ToPrimitive;
use prdna::capacity::{capacity, max_entropic_chain};
use prdna::graph::{Alphabet, SynthesisGraph};
use prdna::schedule::count_schedules;
use std::collections::BTreeMap;

fn integer_graphs() -> Vec<SynthesisGraph> {
    let mut graphs = vec![
        uniform(4, &[1.0]),
        uniform(4, &[1.0, 2.0]),
        uniform(4, &[1.0, 3.0]),
        uniform(4, &[2.0, 3.0, 5.0]),
        uniform(3, &[1.0, 2.0]),
        uniform(2, &[3.0]),
        uniform(5, &[2.0, 6.0]),
    ];
    let mut menus = BTreeMap::new();
    for b in 0..3 {
        for a in 0..3 {
            if a != b {
                let menu = if (b + a) % 2 == 0 {
                    vec![1.0, 4.0]
                } else {
                    vec![2.0, 3.0]
                };
                menus.insert((b, a), menu);
            }
        }
    }
    graphs.push(SynthesisGraph::from_menus(Alphabet::with_size(3).unwrap(), menus, 10.0).unwrap());
    graphs
}

#[test]
fn characteristic_root_matches_ordinary_expansion() {
    for g in integer_graphs() {
        let c = capacity(&g).unwrap();
        let (rho, _) = power_iteration(&adjacency(&g.ordinary_expand().unwrap()), false);
        assert!(
            (c.capacity - rho.log2()).abs() < 1e-9,
            "{:?}: {} vs {}",
            g.uniform_menu(),
            c.capacity,
            rho.log2()
        );
    }
}

#[test]
fn closed_form_for_menu_one_two() {
    let c = capacity(&uniform(4, &[1.0, 2.0])).unwrap();
    assert!((c.capacity - ((3.0 + 21f64.sqrt()) / 2.0).log2()).abs() < 1e-9);
}

#[test]
fn alpha_is_letter_mass_in_expansion() {
    for g in integer_graphs() {
        let c = capacity(&g).unwrap();
        let chain = max_entropic_chain(&g, &c);
        let mass = non_auxiliary_mass(&g.ordinary_expand().unwrap());
        assert!(
            (chain.alpha - mass).abs() < 1e-9,
            "{} vs {mass}",
            chain.alpha
        );
        assert!((chain.alpha * chain.mean_round_duration - 1.0).abs() < 1e-12);
    }
}

#[test]
fn alpha_matches_random_walk() {
    let g = uniform(4, &[1.0, 2.0]);
    let alpha = max_entropic_chain(&g, &capacity(&g).unwrap()).alpha;
    let (mean, se) = random_walk_alpha(&g.ordinary_expand().unwrap(), 1_000_000, 17);
    assert!(
        (alpha - mean).abs() <= 3.0 * se,
        "alpha {alpha}, walk {mean} +- {se}"
    );
}

#[test]
fn edge_probabilities_are_distributions() {
    for g in integer_graphs() {
        let chain = max_entropic_chain(&g, &capacity(&g).unwrap());
        for edges in &chain.edge_probabilities {
            let s: f64 = edges.iter().map(|e| e.probability).sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
        assert!((chain.stationary.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(chain.alpha > 0.0 && chain.alpha <= 1.0);
    }
}

#[test]
fn counts_grow_at_capacity() {
    let g = uniform(4, &[1.0, 2.0]);
    let c = capacity(&g).unwrap().capacity;
    let n = count_schedules(&g, 0, 60).unwrap().to_f64().unwrap();
    assert!((n.log2() / 60.0 - c).abs() < 0.02, "{}", n.log2() / 60.0);
}

#[test]
fn adding_a_duration_never_lowers_capacity() {
    let base = [2.0, 5.0];
    let c0 = capacity(&uniform(4, &base)).unwrap().capacity;
    for extra in [1.0, 3.0, 4.0, 6.0, 9.0] {
        let mut menu = base.to_vec();
        menu.push(extra);
        menu.sort_by(f64::total_cmp);
        assert!(capacity(&uniform(4, &menu)).unwrap().capacity >= c0);
    }
}

#[test]
fn fractional_durations_solve_directly() {
    // 3 z^-1 + 3 z^-1.5 = 1
    let g = uniform(4, &[1.0, 1.5]);
    let z = capacity(&g).unwrap().perron_root;
    assert!((3.0 / z + 3.0 * z.powf(-1.5) - 1.0).abs() < 1e-12);
    let scaled = capacity(&g.rescaled(10).unwrap()).unwrap().capacity;
    assert!((scaled * 10.0 - capacity(&g).unwrap().capacity).abs() < 1e-9);
}
