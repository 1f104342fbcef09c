use loewy_core::binlucas::{hash, perp};
use loewy_core::formulas::{
    self, loewy_general, loewy_oracle, loewy_uniserial, projective_summand, ModuleSpec,
};
use loewy_core::gf2e::{Field, FieldElem};
use loewy_core::modrep::{self, band_rep, string_rep, tensor_rep};
use loewy_core::words::{self, Base, Kind, Letter, Word};
use loewy_core::Error;
use proptest::prelude::*;

const Q: u64 = 4;

fn gf4() -> Field {
    Field::gf4()
}

fn runs_word(start_x: bool, first_inverted: bool, runs: &[usize]) -> Word {
    let mut base = if start_x { Base::X } else { Base::Y };
    let mut letters = Vec::new();
    for (i, &len) in runs.iter().enumerate() {
        let inverted = first_inverted ^ (i % 2 == 1);
        for _ in 0..len {
            letters.push(if inverted {
                Letter::inverse_of(base)
            } else {
                Letter::direct(base)
            });
            base = base.other();
        }
    }
    Word::new(letters).unwrap()
}

/// Valid specs for `Q` over GF(4), kept small enough for the oracle.
fn spec_strategy() -> impl Strategy<Value = ModuleSpec> {
    let max = 2 * Q as usize - 1;
    let uni = (any::<bool>(), 0..=max as u64).prop_map(|(a, l)| {
        if a {
            ModuleSpec::UniserialA(l)
        } else {
            ModuleSpec::UniserialB(l)
        }
    });
    let string = (
        any::<bool>(),
        any::<bool>(),
        proptest::collection::vec(1..=max, 1..=3),
    )
        .prop_map(|(x, inv, runs)| ModuleSpec::String(runs_word(x, inv, &runs)));
    let band = (
        any::<bool>(),
        prop_oneof![
            proptest::collection::vec(1..=max, 2),
            proptest::collection::vec(1..=4usize, 4)
        ],
        1u8..=3,
        1usize..=2,
        0usize..8,
        any::<bool>(),
    )
        .prop_filter_map("not a band word", |(x, runs, rho, n, k, inv)| {
            let w = runs_word(x, false, &runs);
            if !words::in_w_prime(&w) {
                return None;
            }
            let mut w = w.rotate(k % w.len());
            if inv {
                w = w.inverse();
            }
            Some(ModuleSpec::Band {
                word: w,
                rho: FieldElem(rho),
                n,
            })
        });
    prop_oneof![uni, string, band]
}

/// `ℓ` of a single module: one more than its longest directed component.
fn own_length(spec: &ModuleSpec, q: u64) -> u64 {
    if spec.is_regular(q) {
        return 2 * q + 1;
    }
    let longest = match spec {
        ModuleSpec::UniserialA(l) | ModuleSpec::UniserialB(l) => *l,
        ModuleSpec::String(w) => words::directed_components(w)
            .iter()
            .map(|c| c.length as u64)
            .max()
            .unwrap_or(0),
        // components of a band are read cyclically
        ModuleSpec::Band { word, .. } => words::band_canonical(word)
            .unwrap()
            .components
            .iter()
            .map(|c| c.length as u64)
            .max()
            .unwrap_or(0),
    };
    longest + 1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn formula_matches_oracle(a in spec_strategy(), b in spec_strategy()) {
        let f = gf4();
        let r = loewy_general(&a, &b, Q, &f).unwrap();
        prop_assert_eq!(r.length, loewy_oracle(&a, &b, Q, &f).unwrap(), "{} (x) {}", a, b);
    }

    #[test]
    fn formula_symmetry_and_swap(a in spec_strategy(), b in spec_strategy()) {
        let f = gf4();
        let ab = loewy_general(&a, &b, Q, &f).unwrap().length;
        prop_assert_eq!(ab, loewy_general(&b, &a, Q, &f).unwrap().length);
        prop_assert_eq!(ab, loewy_general(&a.swapped(), &b.swapped(), Q, &f).unwrap().length);
    }

    #[test]
    fn formula_bound(a in spec_strategy(), b in spec_strategy()) {
        let f = gf4();
        let r = loewy_general(&a, &b, Q, &f).unwrap();
        let cap = (own_length(&a, Q) + own_length(&b, Q) - 1).min(2 * Q + 1);
        prop_assert!(1 <= r.length && r.length <= cap, "{} (x) {} = {} > {}", a, b, r.length, cap);
    }

    #[test]
    fn projective_iff_maximal(a in spec_strategy(), b in spec_strategy()) {
        let f = gf4();
        let r = loewy_general(&a, &b, Q, &f).unwrap();
        let p = projective_summand(&a, &b, Q, &f).unwrap();
        prop_assert_eq!(p, r.length == 2 * Q + 1);
        prop_assert_eq!(p, r.projective_summand);
    }

    #[test]
    fn uniserial_mixed_dominates(l in 0u64..=300, m in 0u64..=300) {
        let aa = loewy_uniserial(Kind::A, l, Kind::A, m);
        let ab = loewy_uniserial(Kind::A, l, Kind::B, m);
        prop_assert!(aa <= ab);
        prop_assert_eq!(ab, (2 + hash(l, m)).min(1 + l + m));
        prop_assert_eq!(ab, loewy_uniserial(Kind::B, l, Kind::A, m));
        prop_assert_eq!(aa, loewy_uniserial(Kind::B, l, Kind::B, m));
        if perp(l, m) {
            prop_assert_eq!(ab, 1 + l + m);
        }
    }

    #[test]
    fn oracle_tensor_invariants(a in spec_strategy(), b in spec_strategy()) {
        let f = gf4();
        let r = a.representation(&f).unwrap();
        let s = b.representation(&f).unwrap();
        let rs = tensor_rep(&r, &s).unwrap();
        let len = modrep::loewy_length(&rs);
        prop_assert_eq!(len, modrep::loewy_length(&tensor_rep(&s, &r).unwrap()));
        prop_assert_eq!(len, modrep::loewy_length(&tensor_rep(&r.swapped(), &s.swapped()).unwrap()));
        prop_assert!(modrep::check_dihedral(&r, Q) && modrep::check_dihedral(&s, Q));
        prop_assert!(modrep::check_dihedral(&rs, Q));
        if rs.dim() <= 200 {
            prop_assert_eq!(modrep::radical_series(&rs).loewy_length(), len);
        }
    }

    #[test]
    fn string_length_is_longest_component(x in any::<bool>(), inv in any::<bool>(), runs in proptest::collection::vec(1usize..=9, 1..=4)) {
        let w = runs_word(x, inv, &runs);
        let r = string_rep(&w, &Field::gf2());
        prop_assert_eq!(modrep::loewy_length(&r), 1 + runs.iter().max().unwrap());
        prop_assert_eq!(modrep::top_dim(&r) + modrep::socle_dim(&r), runs.len() + 1);
    }
}

#[test]
fn spec_examples() {
    let f = gf4();
    let xyx = ModuleSpec::String(Word::parse("XYx").unwrap());
    assert_eq!(
        loewy_general(&xyx, &ModuleSpec::UniserialA(1), 4, &f)
            .unwrap()
            .length,
        4
    );
    assert_eq!(
        loewy_oracle(&xyx, &ModuleSpec::UniserialA(1), 4, &f).unwrap(),
        4
    );

    let wide = ModuleSpec::Band {
        word: words::two_leg_band_word(3, 3).unwrap(),
        rho: FieldElem::ONE,
        n: 2,
    };
    let a2 = ModuleSpec::UniserialA(2);
    let expected =
        loewy_uniserial(Kind::A, 3, Kind::A, 2).max(loewy_uniserial(Kind::B, 3, Kind::A, 2));
    assert_eq!(loewy_general(&wide, &a2, 4, &f).unwrap().length, expected);
    assert_eq!(loewy_oracle(&wide, &a2, 4, &f).unwrap(), expected);

    for q in [2u64, 4] {
        let p = ModuleSpec::regular(q).unwrap();
        for other in [
            ModuleSpec::UniserialA(0),
            ModuleSpec::UniserialB(1),
            xyx.clone(),
        ] {
            if other.validate(q, &f).is_err() {
                continue;
            }
            assert_eq!(loewy_general(&p, &other, q, &f).unwrap().length, 2 * q + 1);
            assert_eq!(loewy_oracle(&other, &p, q, &f).unwrap(), 2 * q + 1);
            assert!(projective_summand(&other, &p, q, &f).unwrap());
        }
    }
}

#[test]
fn band_fixtures_against_oracle() {
    let f = gf4();
    let g = FieldElem(2);
    let band = |l1: usize, l2: usize, rho| ModuleSpec::Band {
        word: words::two_leg_band_word(l1, l2).unwrap(),
        rho,
        n: 1,
    };
    let one = FieldElem::ONE;
    let cases = [
        (band(2, 2, one), ModuleSpec::UniserialA(1), 3),
        (band(2, 2, g), ModuleSpec::UniserialA(1), 4),
        (band(1, 1, g), band(1, 1, g), 2),
        (band(1, 1, one), band(1, 1, g), 3),
    ];
    for (a, b, want) in cases {
        assert_eq!(
            loewy_general(&a, &b, 2, &f).unwrap().length,
            want,
            "{a} (x) {b}"
        );
        assert_eq!(loewy_oracle(&a, &b, 2, &f).unwrap(), want, "{a} (x) {b}");
    }
    // Equal legs, distinct parameters and l + m = 2q give a projective summand.
    assert!(projective_summand(&band(2, 2, one), &band(2, 2, g), 2, &f).unwrap());
    assert_eq!(
        loewy_oracle(&band(2, 2, one), &band(2, 2, g), 2, &f).unwrap(),
        5
    );
}

#[test]
fn inverted_band_carries_inverse_parameter() {
    // M(w, rho) and M(w^-1, rho^-1) are the same module, so their tensor
    // products with a fixed band agree; M(w^-1, rho) in general differs.
    let f = gf4();
    let w = words::two_leg_band_word(1, 1).unwrap();
    let g = FieldElem(2);
    let g_inv = f.inv(g).unwrap();
    let probe = band_rep(&w, g, 1, &f).unwrap();
    let direct = band_rep(&w, g, 1, &f).unwrap();
    let inverted = band_rep(&w.inverse(), g_inv, 1, &f).unwrap();
    let wrong = band_rep(&w.inverse(), g, 1, &f).unwrap();
    let len = |r| modrep::loewy_length(&tensor_rep(&probe, r).unwrap());
    assert_eq!(len(&direct), len(&inverted));
    assert_ne!(len(&direct), len(&wrong));
}

#[test]
fn invalid_inputs() {
    let f = Field::gf2();
    let err = loewy_general(
        &ModuleSpec::UniserialA(4),
        &ModuleSpec::UniserialA(0),
        2,
        &f,
    )
    .unwrap_err();
    assert!(matches!(err, Error::InvalidModule { q: 2, .. }), "{err}");
    assert!(loewy_general(
        &ModuleSpec::UniserialA(1),
        &ModuleSpec::UniserialA(0),
        6,
        &f
    )
    .is_err());
    let long_string = ModuleSpec::String(Word::parse("xyxyXY").unwrap());
    assert!(long_string.validate(2, &f).is_err());
    assert!(long_string.validate(4, &f).is_ok());
    let a = string_rep(&words::a_word(1), &Field::gf2());
    let b = string_rep(&words::a_word(1), &gf4());
    assert!(matches!(
        tensor_rep(&a, &b),
        Err(Error::FieldMismatch { left: 1, right: 2 })
    ));
    assert!(formulas::loewy_band_uniserial(0, 1, FieldElem::ONE, Kind::A, 0).is_err());
}
