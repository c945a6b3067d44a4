//! Nodal counts compared with a plain breadth-first flood fill on a finer
//! grid, plus structural checks on Wronskian zeros and critical θ values.

use std::collections::VecDeque;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use robin_core::nodal::{
    count_boundary_zeros, count_nodal_domains, count_sign_domains, critical_thetas, eval_phi, find_critical_zeros,
    wronskian_zeros, CriticalClass, Eigenfunction, EigenfunctionSpec,
};
use robin_core::{PairIndex, RobinParam};

fn rp(h: f64) -> RobinParam {
    RobinParam::new(h).unwrap()
}

fn spec(p: usize, q: usize, h: f64, theta: f64) -> EigenfunctionSpec {
    EigenfunctionSpec::new(PairIndex::new(p, q), rp(h), theta)
}

/// Flood fill over cell centres, so no sample lands on a symmetry line.
fn flood_fill_count(s: &EigenfunctionSpec, n: usize) -> usize {
    let c = |i: usize| -FRAC_PI_2 + PI * (i as f64 + 0.5) / n as f64;
    let sign: Vec<i8> = (0..n * n)
        .map(|k| {
            let v = eval_phi(s, c(k % n), c(k / n)).unwrap();
            if v > 0.0 {
                1
            } else if v < 0.0 {
                -1
            } else {
                0
            }
        })
        .collect();
    let mut label = vec![false; n * n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for start in 0..n * n {
        if label[start] || sign[start] == 0 {
            continue;
        }
        count += 1;
        label[start] = true;
        queue.push_back(start);
        while let Some(k) = queue.pop_front() {
            let (i, j) = (k % n, k / n);
            let mut nbrs = Vec::with_capacity(4);
            if i > 0 {
                nbrs.push(k - 1);
            }
            if i + 1 < n {
                nbrs.push(k + 1);
            }
            if j > 0 {
                nbrs.push(k - n);
            }
            if j + 1 < n {
                nbrs.push(k + n);
            }
            for m in nbrs {
                if !label[m] && sign[m] == sign[k] {
                    label[m] = true;
                    queue.push_back(m);
                }
            }
        }
    }
    count
}

#[test]
fn domain_counts_agree_with_flood_fill() {
    let cases = [
        (0, 2, -0.1, FRAC_PI_4),
        (0, 2, -2.0, FRAC_PI_4),
        (0, 4, -4.0, 0.0),
        (0, 4, -4.0, FRAC_PI_2),
        (1, 2, -1.0, 0.3),
        (0, 3, -2.5, 1.2),
        (2, 3, -0.5, 2.0),
        (1, 3, -3.0, 0.7),
    ];
    for (p, q, h, t) in cases {
        let s = spec(p, q, h, t);
        let ours = count_sign_domains(&Eigenfunction::new(s).unwrap(), 512)
            .unwrap()
            .domains;
        assert_eq!(ours, flood_fill_count(&s, 1501), "({p},{q}) h={h} θ={t}");
    }
}

#[test]
#[allow(clippy::approx_constant)]
fn acceptance_nodal_counts_are_grid_stable() {
    let cases = [
        (0, 2, -0.1, FRAC_PI_4, 5),
        (0, 2, -0.6366, FRAC_PI_4, 5),
        (0, 2, -2.0, FRAC_PI_4, 5),
        (0, 4, -4.0, 0.0, 5),
        (0, 4, -4.0, FRAC_PI_2, 5),
        (0, 4, -4.0, 3.0 * FRAC_PI_4, 12),
        (1, 1, -1.0, 0.0, 4),
    ];
    for (p, q, h, t, expected) in cases {
        let s = spec(p, q, h, t);
        let r = count_nodal_domains(s, 1024).unwrap();
        assert_eq!(r.domains, expected, "({p},{q}) h={h} θ={t}");
        let fine = count_sign_domains(&Eigenfunction::new(s).unwrap(), 2048).unwrap();
        assert_eq!(fine.domains, expected);
        assert!(r.domains as i64 <= r.euler_upper_bound);
        assert_eq!(r.interior_loops, 0);
    }
}

#[test]
fn three_quarter_case_for_q4() {
    let r = count_nodal_domains(spec(0, 4, -4.0, 3.0 * FRAC_PI_4), 1024).unwrap();
    assert_eq!(r.interior_critical_zeros, 5);
    assert_eq!(r.boundary_zeros, 12);
    assert_eq!(r.euler_upper_bound, 12);
}

#[test]
fn parity_rules_hold_on_random_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..24 {
        let p = rng.random_range(0..3usize);
        let q = rng.random_range(p + 1..p + 4);
        let h = -rng.random_range(0.05..6.0);
        let theta = rng.random_range(0.0..PI);
        let s = spec(p, q, h, theta);
        let Ok(count) = count_sign_domains(&Eigenfunction::new(s).unwrap(), 256) else {
            continue;
        };
        if (p + q) % 2 == 1 {
            assert_eq!(count.domains % 2, 0, "({p},{q}) h={h} θ={theta}");
        }
        if p % 2 == 1 && q % 2 == 1 {
            assert_eq!(count.domains % 4, 0, "({p},{q}) h={h} θ={theta}");
        }
    }
}

#[test]
fn wronskian_zero_counts() {
    for q in [4, 6, 8] {
        for h in [-4.0, -6.0, -10.0, -20.0, -30.0] {
            let wz = wronskian_zeros(q, rp(h)).unwrap();
            assert_eq!(wz.zeros.len(), q - 1, "q={q} h={h}");
            let n = wz.zeros.len();
            for i in 0..n {
                assert_eq!(wz.zeros[i], -wz.zeros[n - 1 - i]);
            }
            assert!(wz.localisation_holds(), "q={q} h={h}");
        }
    }
    let wz = wronskian_zeros(6, rp(-30.0)).unwrap();
    for (g, l) in wz.positive().iter().zip(wz.limits()) {
        assert!((g - l).abs() < 0.05);
    }
}

#[test]
fn three_quarter_exclusions() {
    for q in [4, 6, 8] {
        for h in [-10.0, -20.0] {
            let set = critical_thetas(q, rp(h)).unwrap();
            let at = set.points_at(3.0 * FRAC_PI_4);
            for p in at {
                match p.class {
                    CriticalClass::AxisX | CriticalClass::AxisY => panic!("axis point at 3π/4: {p:?}"),
                    CriticalClass::Grid(i, j) => assert_eq!(i % 2, j % 2, "{p:?}"),
                    _ => {}
                }
            }
            assert!(set.points.len() <= (q - 1) * (q - 1));
        }
    }
}

#[test]
fn newton_and_wronskian_grid_agree() {
    let h = -6.0;
    let set = critical_thetas(6, rp(h)).unwrap();
    for theta in set.thetas() {
        let expected = set.points_at(theta);
        if expected.is_empty() {
            continue;
        }
        let f = Eigenfunction::new(spec(0, 6, h, theta)).unwrap();
        let found = find_critical_zeros(&f);
        for e in &expected {
            assert!(
                found.iter().any(|z| (z.x - e.x).hypot(z.y - e.y) < 1e-6),
                "missing {e:?} at θ={theta}"
            );
            assert!(f.laplacian(e.x, e.y).abs() < 1e-8 * f.norm);
        }
    }
}

#[test]
fn boundary_caps_hold() {
    for (q, t) in [(4, 3.0 * FRAC_PI_4), (4, 0.4), (6, 1.0), (5, 2.0)] {
        let b = count_boundary_zeros(&Eigenfunction::new(spec(0, q, -4.0, t)).unwrap()).unwrap();
        for (edge, cap) in b.edges.iter().zip(b.caps) {
            assert!(edge.iter().map(|e| e.1).sum::<usize>() <= cap);
        }
    }
    let b = count_boundary_zeros(&Eigenfunction::new(spec(0, 4, -4.0, 3.0 * FRAC_PI_4)).unwrap()).unwrap();
    assert!(b.total <= 12);
}
