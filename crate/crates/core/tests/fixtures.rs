use logtensor::error::Error;
use logtensor::fixtures::{Fixture, FixtureSpec};
use logtensor::io::{export_operator, load_operator};
use logtensor::scalar::Q;
use proptest::prelude::*;

#[test]
fn specs_parse_and_print() {
    let s: FixtureSpec = "heis:1/2,-1".parse().unwrap();
    assert_eq!(s, FixtureSpec::Heis { lambda: Q::new(1, 2), mu: Q::from_int(-1) });
    assert_eq!(s.to_string(), "heis:1/2,-1");
    let s: FixtureSpec = "jordan:3,42".parse().unwrap();
    assert_eq!(s, FixtureSpec::Jordan { r: 3, seed: 42 });
    assert_eq!(s.to_string().parse::<FixtureSpec>().unwrap(), s);
    for bad in ["heis", "heis:1", "jordan:x,1", "fock:1,2", "heis:a,b"] {
        assert!(matches!(bad.parse::<FixtureSpec>(), Err(Error::Parse(_))), "{bad}");
    }
}

#[test]
fn jordan_families_are_deterministic() {
    let spec = FixtureSpec::Jordan { r: 3, seed: 7 };
    let a = Fixture::load(&spec, 0).unwrap();
    let b = Fixture::load(&spec, 0).unwrap();
    assert!(a.op.compare(&b.op, "same seed", "fixture", 0.0).exact_zero);
    let c = Fixture::load(&FixtureSpec::Jordan { r: 3, seed: 8 }, 0).unwrap();
    assert!(!a.op.compare(&c.op, "other seed", "fixture", 0.0).pass);
}

#[test]
fn block_size_one_has_no_logarithms() {
    for seed in 0..10 {
        let f = Fixture::load(&FixtureSpec::Jordan { r: 1, seed }, 0).unwrap();
        assert_eq!(f.op.max_logpower(), 0);
        assert!(f.op.support().iter().all(|(_, k)| *k == 0));
    }
}

#[test]
fn heisenberg_fixture_export_round_trip() {
    let f = Fixture::load(&"heis:1/2,-1/3".parse().unwrap(), 3).unwrap();
    let dir = std::env::temp_dir().join(format!("logtensor-fixture-{}", std::process::id()));
    let files = export_operator(&f.alg, &f.op, &dir).unwrap();
    assert!(files.iter().all(|p| p.exists()));
    let (_, back) = load_operator(&dir.join("operator.json")).unwrap();
    assert!(back.compare(&f.op, "export", "fixture", 0.0).exact_zero);
    std::fs::remove_dir_all(&dir).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn jordan_families_obey_the_weight_law(r in 1u32..=4, seed in 0u64..100_000) {
        let f = Fixture::load(&FixtureSpec::Jordan { r, seed }, 0).unwrap();
        prop_assert!(f.op.weight_law_report().pass);
        prop_assert!(f.op.max_logpower() < 2 * r);
    }
}
