mod common;

use common::{assoc_oracle, fuse_oracle, ising_rules};
use logtensor::error::Error;
use logtensor::fusion::*;
use proptest::prelude::*;

fn ising() -> FusionTable {
    bundled_table("ising").unwrap()
}

#[test]
fn bundled_ising_matches_hand_table() {
    let t = ising();
    let n = ising_rules();
    for j in 0..3 {
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(t.n(j, a, b), n[j][a][b], "N^{j}_{a}{b}");
            }
        }
    }
    assert_eq!(t.labels, ["1", "ε", "σ"]);
}

#[test]
fn sigma_times_sigma() {
    let t = ising();
    let s = t.irreducible(2);
    assert_eq!(fuse(&s, &s, &t).unwrap(), vec![1, 1, 0]);
    assert_eq!(fuse_oracle(&ising_rules(), &s, &s), vec![1, 1, 0]);
}

#[test]
fn quotient_example() {
    let t = ising();
    let rep = quotient_multiplicity_check(&vec![1, 1, 1], &vec![1, 1, 0], &vec![0, 0, 1], &t).unwrap();
    assert!(rep.pass);
    assert!(matches!(quotient_multiplicity_check(&vec![1, 0, 0], &vec![1, 1, 0], &vec![0, 0, 1], &t), Err(Error::Fusion(_))));
}

#[test]
fn bundled_tables_are_associative_and_unital() {
    for name in BUNDLED_TABLES {
        let t = bundled_table(name).unwrap();
        assert!(assoc_multiplicity_check(&t).pass, "{name}");
        assert!(unit_law_report(&t).pass, "{name}");
        assert!(bilinearity_report(&t).pass, "{name}");
    }
    assert!(bundled_table("z7").is_err());
}

#[test]
fn fibonacci_tau_squared() {
    let t = bundled_table("fibonacci").unwrap();
    assert_eq!(fuse(&t.irreducible(1), &t.irreducible(1), &t).unwrap(), vec![1, 1]);
}

/// Dropping `ε` from `σ ⊠ σ` breaks associativity; the violations found
/// by the library are exactly those of the brute-force oracle.
#[test]
fn corrupted_tables_match_oracle() {
    let t = ising();
    for (j, v) in [(1usize, 0u64), (2, 1), (0, 2)] {
        let bad = t.with_entry_unchecked(j, 2, 2, v);
        let mut n = ising_rules();
        n[j][2][2] = v;
        let want = assoc_oracle(&n);
        let got: Vec<_> = assoc_violations(&bad).iter().map(|v| (v.w1, v.w2, v.w3, v.j)).collect();
        assert_eq!(got, want, "N^{j}_σσ = {v}");
        let rep = assoc_multiplicity_check(&bad);
        assert_eq!(rep.pass, want.is_empty());
        assert_eq!(rep.offending.len(), want.len());
    }
    // the ε-dropping corruption produces four violations
    let mut n = ising_rules();
    n[1][2][2] = 0;
    assert_eq!(assoc_oracle(&n).len(), 4);
}

#[test]
fn length_mismatch_is_an_error() {
    let t = ising();
    assert!(matches!(fuse(&vec![1, 0], &vec![1, 0, 0], &t), Err(Error::Fusion(_))));
    assert!(triple_decompose(&vec![1, 0, 0], &vec![1], &vec![1, 0, 0], &t, Side::Left).is_err());
}

#[test]
fn json_round_trip_and_errors() {
    let t = ising();
    let back = FusionTable::from_json(&t.to_json().to_string()).unwrap();
    assert_eq!(back, t);
    let by_label = r#"{"labels":["1","a"],"unit":"1","N":[["1","1","1",1],["a","1","a",1],["a","a","1",1],["1","a","a",1]]}"#;
    let z2 = FusionTable::from_json(by_label).unwrap();
    assert_eq!(z2.n(0, 1, 1), 1);
    for bad in [
        "not json",
        r#"{"labels":["1"],"unit":"x","N":[]}"#,
        r#"{"labels":["1"],"unit":"1","N":[["1","1","q",1]]}"#,
        r#"{"labels":["1"],"unit":"1","N":[[0,0,0,-1]]}"#,
    ] {
        assert!(matches!(FusionTable::from_json(bad), Err(Error::Parse(_))), "{bad}");
    }
    // parses but breaks the unit law
    let r = FusionTable::from_json(r#"{"labels":["1","a"],"unit":"1","N":[[0,0,0,1],[1,0,1,2],[1,1,0,1]]}"#);
    assert!(matches!(r, Err(Error::Fusion(_))));
}

fn vec3() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..4, 3)
}

proptest! {
    #[test]
    fn fuse_agrees_with_oracle(a in vec3(), b in vec3()) {
        prop_assert_eq!(fuse(&a, &b, &ising()).unwrap(), fuse_oracle(&ising_rules(), &a, &b));
    }

    #[test]
    fn fuse_is_bilinear(a in vec3(), b in vec3(), c in vec3()) {
        let t = ising();
        let ab: Vec<u64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let lhs = fuse(&ab, &c, &t).unwrap();
        let rhs: Vec<u64> = fuse(&a, &c, &t).unwrap().iter().zip(fuse(&b, &c, &t).unwrap()).map(|(x, y)| x + y).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn triple_sides_agree(a in vec3(), b in vec3(), c in vec3()) {
        let t = ising();
        prop_assert_eq!(
            triple_decompose(&a, &b, &c, &t, Side::Left).unwrap(),
            triple_decompose(&a, &b, &c, &t, Side::Right).unwrap()
        );
    }

    #[test]
    fn quotients_never_lose_multiplicity(w in vec3(), w3 in vec3(), extra in vec3()) {
        let w2: Vec<u64> = w3.iter().zip(&extra).map(|(x, y)| x + y).collect();
        prop_assert!(quotient_multiplicity_check(&w2, &w3, &w, &ising()).unwrap().pass);
    }
}
