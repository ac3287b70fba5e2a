use zimin_core::abelian::g_value;
use zimin_core::search::{f_value, longest_avoiding, longest_avoiding_resumable, Budget, FValue, SearchOptions};

#[test]
fn parallel_matches_serial() {
    for (n, k) in [(1, 3), (2, 2), (2, 4), (3, 2)] {
        let s = longest_avoiding(n, k, &SearchOptions::serial(Budget::unlimited())).unwrap();
        for threads in [0, 2, 3] {
            let mut o = SearchOptions::parallel(Budget::unlimited(), threads);
            o.split_depth = 5;
            let p = longest_avoiding(n, k, &o).unwrap();
            assert_eq!(p.witness, s.witness, "n={n} k={k} threads={threads}");
            assert_eq!(p.max_avoiding_length, s.max_avoiding_length);
            assert_eq!(p.nodes_explored, s.nodes_explored);
            assert!(p.exhausted);
        }
    }
}

#[test]
fn checkpoint_chain_reaches_the_full_result() {
    let full = longest_avoiding(3, 2, &SearchOptions::serial(Budget::unlimited())).unwrap();
    let step = SearchOptions::serial(Budget::nodes(5_000));
    let mut resume = None;
    let mut rounds = 0;
    let cert = loop {
        let (cert, cp) = longest_avoiding_resumable(3, 2, &step, resume.as_ref()).unwrap();
        rounds += 1;
        let cp = cp.expect("serial runs checkpoint");
        if cp.finished {
            break cert;
        }
        let json = serde_json::to_string(&cp).unwrap();
        resume = Some(serde_json::from_str(&json).unwrap());
    };
    assert!(rounds > 1);
    assert!(cert.exhausted);
    assert_eq!(cert.witness, full.witness);
    assert_eq!(cert.nodes_explored, full.nodes_explored);
}

#[test]
fn budget_yields_lower_bound() {
    let (v, cert) = f_value(3, 2, &SearchOptions::serial(Budget::nodes(50))).unwrap();
    assert!(!cert.exhausted);
    assert!(matches!(v, FValue::LowerBound { .. }));
    assert_eq!(v.exact(), None);
}

#[test]
fn abelian_never_exceeds_exact() {
    let opts = SearchOptions::serial(Budget::unlimited());
    for k in 2..=3 {
        let g = g_value(2, k, &opts).unwrap().0.exact().unwrap();
        let f = f_value(2, k, &opts).unwrap().0.exact().unwrap();
        assert!(g <= f);
    }
}
