use repext::catalog::{check_minimal, check_nonextendible, verify_certificate, Certificate};
use repext::extender::{extend, is_extendible};
use repext::oracle::{enumerate_instances, oracle_extendible};

#[test]
fn decisions_match_oracle_up_to_five_vertices() {
    let mut count = 0;
    for inst in enumerate_instances(5, 3) {
        let want = oracle_extendible(&inst.graph, &inst.rep).unwrap();
        let got = is_extendible(&inst.graph, &inst.rep).unwrap();
        assert_eq!(got, want, "graph {:?} rep {:?}", inst.graph.edges().collect::<Vec<_>>(), inst.rep);
        count += 1;
    }
    assert!(count > 1000);
}

#[test]
fn certificates_check_out_up_to_five_vertices() {
    let mut unclassified = 0;
    for inst in enumerate_instances(5, 3) {
        let cert = match extend(&inst.graph, &inst.rep) {
            Ok(c) => c,
            Err(e) => {
                unclassified += 1;
                eprintln!("{e}: {:?} {:?}", inst.graph.edges().collect::<Vec<_>>(), inst.rep.predrawn().collect::<Vec<_>>());
                continue;
            }
        };
        verify_certificate(&inst.graph, &inst.rep, &cert).unwrap();
        if let Certificate::Obstructed { obstruction, .. } = &cert {
            assert!(check_nonextendible(obstruction).unwrap());
            assert!(check_minimal(obstruction).unwrap());
        }
    }
    assert_eq!(unclassified, 0);
}
