//! Square spectrum, thresholds and crossings.

use std::f64::consts::PI;

use robin_core::interval::{slot_mode, CRITICAL_H};
use robin_core::nodal::{sigma_jk_distinctness, theta_asymptotics};
use robin_core::{
    enumerate_spectrum, find_crossings, find_h2_star, find_h9_star, minimal_labelling_check, sigma, sigma_scaled,
    PairIndex, RobinParam, TableCase,
};

fn rp(h: f64) -> RobinParam {
    RobinParam::new(h).unwrap()
}

/// Sorted values of all ordered slot pairs up to `slots`, computed directly.
fn brute_force_values(h: f64, slots: usize) -> Vec<f64> {
    let s: Vec<f64> = (0..slots).map(|k| slot_mode(k, rp(h)).unwrap().signed_square).collect();
    let mut v: Vec<f64> = s
        .iter()
        .flat_map(|a| s.iter().map(move |b| (a + b) / (PI * PI)))
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

#[test]
fn labels_match_brute_force_sort() {
    for h in [-0.2, -1.0, -3.0, -12.0] {
        let k = 40;
        let entries = enumerate_spectrum(rp(h), k).unwrap();
        let oracle = brute_force_values(h, 20);
        for e in &entries {
            for label in e.labels().filter(|&l| l <= k) {
                let v = oracle[label - 1];
                assert!(
                    (e.value - v).abs() < 1e-9 * (1.0 + v.abs()),
                    "h={h} label={label}: {} vs {v}",
                    e.value
                );
            }
        }
    }
}

#[test]
fn table_ordering_at_minus_twenty() {
    let entries = enumerate_spectrum(rp(-20.0), 19).unwrap();
    let expected = [
        ((0, 0), 1),
        ((0, 1), 2),
        ((1, 1), 4),
        ((0, 2), 5),
        ((1, 2), 7),
        ((0, 3), 9),
        ((1, 3), 11),
        ((0, 4), 13),
        ((1, 4), 15),
        ((0, 5), 17),
        ((1, 5), 19),
    ];
    for ((p, q), label) in expected {
        let e = entries.iter().find(|e| e.label == label).unwrap();
        assert_eq!(e.pairs, vec![PairIndex::new(p, q)]);
        assert_eq!(e.multiplicity, if p == q { 1 } else { 2 });
        assert!(e.is_negative());
    }
    assert!(minimal_labelling_check(rp(-20.0)).unwrap().iter().all(|c| c.pass));
}

#[test]
fn first_sixteen_at_minus_four() {
    let entries = enumerate_spectrum(rp(-4.0), 16).unwrap();
    let pairs: Vec<PairIndex> = entries.iter().flat_map(|e| e.pairs.clone()).collect();
    let expected = [(0, 0), (0, 1), (1, 1), (0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4)];
    assert_eq!(pairs[..expected.len()], expected.map(|(p, q)| PairIndex::new(p, q)));
    let last = entries.iter().find(|e| e.labels().contains(&16)).unwrap();
    assert_eq!(last.pairs, vec![PairIndex::new(1, 4)]);
}

#[test]
fn shallow_degeneracy() {
    let entries = enumerate_spectrum(rp(-0.2), 3).unwrap();
    assert_eq!(entries[1].label, 2);
    assert_eq!(entries[1].multiplicity, 2);
}

#[test]
fn thresholds() {
    let h9 = find_h9_star();
    assert!((-1.6303..=-1.6283).contains(&h9), "{h9}");
    let h2 = find_h2_star();
    assert!((-0.4392..=-0.4372).contains(&h2), "{h2}");
}

#[test]
fn sigma_anchors() {
    let (a, b) = (PairIndex::new(0, 2), PairIndex::new(1, 1));
    assert!((sigma(a, b, rp(-1e-9)).unwrap() - 2.0).abs() < 1e-6);
    assert!((sigma_scaled(a, b, rp(CRITICAL_H)).unwrap() - 25.5669).abs() < 1e-3);
    let c = sigma_scaled(PairIndex::new(0, 3), PairIndex::new(1, 2), rp(CRITICAL_H)).unwrap();
    assert!((c - 43.6821).abs() < 1e-3, "{c}");
}

#[test]
fn crossings() {
    let h9 = find_crossings(PairIndex::new(2, 2), PairIndex::new(0, 3), -4.0, -0.1).unwrap();
    assert_eq!(h9.len(), 1);
    assert!((h9[0].h_cross + 1.6293).abs() < 1e-3);
    assert_eq!(h9[0].table_case, Some(TableCase::III));
    assert_eq!(h9[0].matches_table(), Some(true));
    assert!(find_crossings(PairIndex::new(0, 2), PairIndex::new(1, 1), -8.0, -0.01)
        .unwrap()
        .is_empty());
    let v = find_crossings(PairIndex::new(2, 4), PairIndex::new(3, 3), -50.0, -0.01).unwrap();
    assert!(v.len() <= 2);
}

#[test]
fn theta_asymptotics_and_sigma_leading_term() {
    for h in [-20.0, -40.0] {
        let t = theta_asymptotics(6, rp(h), 1).unwrap();
        let lhs = t.tan_exact.abs().ln() - t.beta0 * t.gamma_j / PI;
        let limit = (t.beta0 / (2.0 * t.alpha_q)).ln();
        assert!(
            (lhs - limit).abs() < 0.05 * limit.abs().max(1.0),
            "h={h}: {lhs} vs {limit}"
        );
    }
    let cmp = sigma_jk_distinctness(8, rp(-40.0)).unwrap();
    for c in &cmp {
        assert!(c.difference > 0.0);
    }
    // leading term of σ_12 at h = −40
    let t1 = theta_asymptotics(8, rp(-40.0), 1).unwrap();
    let t2 = theta_asymptotics(8, rp(-40.0), 2).unwrap();
    let s12 = robin_core::nodal::sigma_jk(t1.tan_exact, t2.tan_exact, 1, 2);
    let lead = t1.beta0 / t1.alpha_q * (1.0 - 2.0) * PI;
    assert!((s12 / lead - 1.0).abs() < 0.1, "{s12} vs {lead}");
}
