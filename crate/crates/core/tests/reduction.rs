mod common;

use common::{random_perm, rng};
use permsquare_core::reduction::Gadget;
use permsquare_core::{
    build_forward_witness, build_instance, find_occurrence, reduction_constants, verify_instance, IndexSet, Violation,
};
use rand::Rng;

#[test]
fn instance_length_is_linear() {
    for n in 0..=50 {
        for k in 0..=n {
            let len = reduction_constants(n, k).mu_len(n, k);
            assert!(len <= 2436 * (n + 1), "n={n} k={k}");
        }
    }
}

#[test]
fn random_instances_keep_structure_and_arc_inventory() {
    let mut rng = rng();
    let mut built = 0;
    while built < 200 {
        let n = rng.random_range(1..=8);
        let k = rng.random_range(1..=n);
        let pi = random_perm(&mut rng, n);
        let sigma = random_perm(&mut rng, k);
        let Some(occ) = find_occurrence(&sigma, &pi) else { continue };
        built += 1;
        let inst = build_instance(&pi, &sigma).unwrap();
        assert!(verify_instance(&inst, None).is_empty());
        assert_eq!(inst.mu.len(), reduction_constants(n, k).mu_len(n, k));
        let w = build_forward_witness(&inst, &occ).unwrap();
        assert!(w.arcs().iter().all(|a| a.source < a.sink));
        assert!(w.satisfies_p1());
        let c = inst.constants;
        assert_eq!(w.arcs().len(), c.n1 + c.n2 + c.n3 + c.n4 + (k + 2) + (n - k) + k);
        let report = verify_instance(&inst, Some(w.arcs()));
        assert!(report.iter().all(|v| *v == Violation::P2), "{report:?}");
    }
}

#[test]
fn layout_boundaries_match_gadget_values() {
    let mut rng = rng();
    for _ in 0..50 {
        let n = rng.random_range(1..=8);
        let k = rng.random_range(0..=n);
        let inst = build_instance(&random_perm(&mut rng, n), &random_perm(&mut rng, k)).unwrap();
        let c = inst.constants;
        let mu = inst.mu.letters();
        let span = |g| *inst.span(g).unwrap();
        let at = |p: usize| mu[p - 1] as usize;

        let nu1 = span(Gadget::Nu1);
        assert_eq!((nu1.start, nu1.end), (1, c.n1));
        assert_eq!(at(nu1.start), 2 * c.n2 + 2 * c.n3 + 2 * c.n4 + 2 * n + 2 * k + 5);
        let sigma_p = span(Gadget::SigmaPrime);
        assert_eq!(sigma_p.start, 2 * c.n1 + c.n2 + c.n3 + 1);
        assert_eq!(at(sigma_p.start), 2 * c.n2 + c.n4 + 2 * n + 2 * k + 3);
        assert_eq!(at(sigma_p.end), 2 * c.n2 + c.n4 + 2 * n + 2 * k + 4);
        let pi_p = span(Gadget::PiPrime);
        assert_eq!(pi_p.start, 2 * c.n1 + 2 * c.n2 + 2 * c.n3 + c.n4 + k + 3);
        assert_eq!(at(pi_p.start), 2 * c.n2 + c.n4 + 2 * n + k + 1);
        assert_eq!(at(pi_p.end), 2 * c.n2 + c.n4 + 2 * n + k + 2);
        let nu2_p = span(Gadget::Nu2Prime);
        assert_eq!((at(nu2_p.start), at(nu2_p.end)), (c.n2, 1));
        let sigma_pp = span(Gadget::SigmaSecond);
        assert_eq!(sigma_pp.end, mu.len());
    }
}

#[test]
fn invalid_occurrences_are_rejected() {
    let inst = build_instance(&random_perm(&mut rng(), 5), &permsquare_core::Permutation::identity(2)).unwrap();
    let bad = [vec![1], vec![1, 2, 3], vec![5, 6]];
    for positions in bad {
        let occ = IndexSet::new(positions).unwrap();
        assert!(build_forward_witness(&inst, &occ).is_err());
    }
}
