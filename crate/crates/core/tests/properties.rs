mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use saito::algebra::{
    int, pullback_one_form, pullback_poly, rat, wedge, BivariatePoly, OneForm,
    PuiseuxParametrization, TruncatedSeries,
};
use saito::blowup::{build_process, CurveAttachment};
use saito::cs_solver::{check_realizability, solve_cs_indices, verify_certificate};
use saito::saito_min::{coloration_value, min_saito, numbering_for_coloration, Color, SearchOptions};
use saito::semimodule::{
    echelon_orders, lambda_generators, saito_basis_check, t_values, Semigroup,
};
use saito::verify::random_centers;

fn poly() -> impl Strategy<Value = BivariatePoly> {
    prop::collection::vec(((0u32..5, 0u32..5), -9i64..=9, 1i64..=4), 0..6).prop_map(|ts| {
        BivariatePoly::from_terms(ts.into_iter().map(|(m, n, d)| (m, rat(n, d))))
    })
}

fn form() -> impl Strategy<Value = OneForm> {
    (poly(), poly()).prop_map(|(a, b)| OneForm::new(a, b).unwrap_or_else(OneForm::dx_form))
}

fn coprime_pair(lo: u64, hi: u64) -> impl Strategy<Value = (u64, u64)> {
    (lo..=hi, 1u64..=hi)
        .prop_map(|(a, d)| (a, a + d))
        .prop_filter("coprime", |&(a, b)| num_integer::gcd(a, b) == 1)
}

/// Branch `x = t^a`, `y = t^b + higher terms`, `a < b` coprime.
fn branch() -> impl Strategy<Value = PuiseuxParametrization> {
    (coprime_pair(2, 5).prop_filter("small", |&(_, b)| b <= 9), prop::collection::vec((-4i64..=4, 1i64..=3), 40))
        .prop_map(|((a, b), extra)| {
            let (a, b) = (a as u32, b as u32);
            let trunc = PuiseuxParametrization::default_trunc(a, b);
            let mut terms = vec![(b, int(1))];
            for (k, (n, d)) in extra.into_iter().enumerate() {
                let e = b + 1 + 2 * k as u32;
                if e < trunc && n != 0 {
                    terms.push((e, rat(n, d)));
                }
            }
            PuiseuxParametrization::new(a, TruncatedSeries::from_terms("t", trunc, terms))
        })
}

/// Random process of 1..=9 blow-ups with branches on the last component
/// and possibly elsewhere.
fn process_and_attachment() -> impl Strategy<Value = (saito::blowup::BlowUpProcess, CurveAttachment)> {
    (any::<u64>(), 1usize..=9, prop::collection::vec(0u32..=2, 9)).prop_map(|(seed, steps, mut counts)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = build_process(&random_centers(&mut rng, steps)).unwrap();
        counts.truncate(steps);
        counts[steps - 1] = counts[steps - 1].max(1);
        (p, CurveAttachment::new(counts))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn wedge_is_antisymmetric(a in form(), b in form()) {
        prop_assert_eq!(wedge(&a, &b), -&wedge(&b, &a));
        prop_assert!(wedge(&a, &a).is_zero());
    }

    #[test]
    fn pullback_is_a_ring_map(psi in branch(), g in poly(), h in poly()) {
        let (pg, ph) = (pullback_poly(&psi, &g), pullback_poly(&psi, &h));
        prop_assert_eq!(pullback_poly(&psi, &(&g * &h)), pg.mul(&ph));
        prop_assert_eq!(pullback_poly(&psi, &(&g + &h)), pg.add(&ph));
    }

    #[test]
    fn pullback_of_differential_is_derivative(psi in branch(), h in poly()) {
        let lhs = pullback_one_form(&psi, &OneForm::differential(&h));
        let rhs = pullback_poly(&psi, &h).derivative();
        prop_assert_eq!(lhs, rhs.truncate(psi.trunc() - 1));
    }

    #[test]
    fn apery_membership_matches_search((a, b) in coprime_pair(2, 12)) {
        let g = Semigroup::new(a, b).unwrap();
        for n in 0..=2 * g.conductor() {
            prop_assert_eq!(g.contains(n), common::brute_member(a, b, n), "n = {}", n);
        }
    }

    #[test]
    fn echelon_ignores_row_order(psi in branch(), forms in prop::collection::vec(form(), 1..8), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut rows: Vec<TruncatedSeries> = forms.iter().map(|w| pullback_one_form(&psi, w)).collect();
        let before = echelon_orders(&rows);
        rows.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(echelon_orders(&rows), before);
    }

    #[test]
    fn lambda_contains_shifted_semigroup(psi in branch()) {
        let l = lambda_generators(&psi, psi.trunc()).unwrap();
        let (a, b) = l.semigroup.generators();
        prop_assert_eq!(&l.generators[..2], &[a, b]);
        for n in 1..psi.trunc() as u64 {
            if l.semigroup.contains_shifted(n, a) || l.semigroup.contains_shifted(n, b) {
                prop_assert!(l.contains(n));
            }
        }
        // minimality: no generator lies in the span of the earlier ones
        for (j, &lj) in l.generators.iter().enumerate() {
            prop_assert!(!l.generators[..j].iter().any(|&li| l.semigroup.contains_shifted(lj, li)));
        }
    }

    #[test]
    fn first_t_values((a, b) in coprime_pair(2, 15)) {
        let g = Semigroup::new(a, b).unwrap();
        let t = t_values(&g, &[a, b]).unwrap();
        prop_assert_eq!(t.t(1), Some(a + b));
        prop_assert_eq!(t.t_tilde(1), Some(a * b));
    }

    #[test]
    fn basis_check_symmetric_up_to_sign(a in form(), b in form(), f in poly()) {
        prop_assume!(!f.is_zero());
        let (r1, r2) = (saito_basis_check(&a, &b, &f), saito_basis_check(&b, &a, &f));
        prop_assert_eq!(r1.is_basis, r2.is_basis);
        prop_assert_eq!(r1.cofactor.map(|c| -&c), r2.cofactor);
    }

    #[test]
    fn min_below_all_black((p, att) in process_and_attachment()) {
        let g = p.dual_graph();
        let best = min_saito(&g, &att, SearchOptions::default()).unwrap();
        let black = coloration_value(&g, &att, &vec![Color::Black; g.len()]);
        prop_assert!(best.value <= black);
    }

    #[test]
    fn min_matches_naive_oracle((p, att) in process_and_attachment()) {
        let g = p.dual_graph();
        let best = min_saito(&g, &att, SearchOptions::default()).unwrap();
        prop_assert_eq!(best.value, common::naive_min(&g, &att));
        let white: Vec<bool> = best.witness.colors.iter().map(|c| c.is_white()).collect();
        prop_assert_eq!(&best.witness.second, &common::naive_numbering(&g, att.counts(), &white));
    }

    #[test]
    fn min_invariant_under_relabeling((p, att) in process_and_attachment(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let g = p.dual_graph();
        let mut perm: Vec<usize> = (0..g.len()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let mut counts = vec![0; g.len()];
        for v in 0..g.len() {
            counts[perm[v]] = att.get(v);
        }
        let relabeled = min_saito(&g.permuted(&perm), &CurveAttachment::new(counts), SearchOptions::default()).unwrap();
        prop_assert_eq!(relabeled.value, min_saito(&g, &att, SearchOptions::default()).unwrap().value);
    }

    #[test]
    fn parallel_equals_sequential((p, att) in process_and_attachment()) {
        let g = p.dual_graph();
        let seq = min_saito(&g, &att, SearchOptions { parallel: false, ..Default::default() }).unwrap();
        let par = min_saito(&g, &att, SearchOptions { parallel: true, ..Default::default() }).unwrap();
        prop_assert_eq!(seq, par);
    }

    #[test]
    fn canonical_numberings_are_certified((p, att) in process_and_attachment(), mask in any::<u32>()) {
        let g = p.dual_graph();
        let colors: Vec<Color> = (0..g.len())
            .map(|v| if mask >> v & 1 == 1 { Color::White } else { Color::Black })
            .collect();
        let numbered = numbering_for_coloration(&g, &att, &colors);
        prop_assert!(check_realizability(&numbered).ok);
        let cert = solve_cs_indices(&numbered).unwrap();
        prop_assert!(verify_certificate(&numbered, &cert).unwrap());
    }

    #[test]
    fn chain_rule_order(psi in branch(), h in poly()) {
        // ord psi^*(dh) = ord psi^*(h) - 1 when h(0) = 0
        let h0 = &h - &BivariatePoly::constant(h.constant_term());
        let f = pullback_poly(&psi, &h0).order().finite();
        let w = pullback_one_form(&psi, &OneForm::differential(&h0)).order().finite();
        if let Some(o) = f {
            if o + 1 < psi.trunc() {
                prop_assert_eq!(w, Some(o - 1));
            }
        }
    }
}
