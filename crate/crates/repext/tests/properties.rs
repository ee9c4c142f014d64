use proptest::prelude::*;
use repext::catalog::{rank_compress, verify_certificate, Certificate};
use repext::extender::{extend, is_extendible};
use repext::oracle::{oracle_extendible, Instance};
use repext::random::random_instance;
use repext::{Graph, PartialRepresentation};

fn instance() -> impl Strategy<Value = Instance> {
    (2usize..10, 1usize..4, 0.2f64..0.7, 0.0f64..0.6, any::<u64>()).prop_map(|(n, d, f, noise, seed)| random_instance(n, d, f, noise, seed).unwrap())
}

fn class_of(c: &Certificate) -> Option<String> {
    c.obstruction().map(|o| o.label())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn decision_matches_oracle(inst in instance()) {
        let want = oracle_extendible(&inst.graph, &inst.rep).unwrap();
        prop_assert_eq!(is_extendible(&inst.graph, &inst.rep).unwrap(), want);
    }

    #[test]
    fn flip_maps_certificates_to_mirrors(inst in instance()) {
        let flipped = inst.rep.flip();
        let a = extend(&inst.graph, &inst.rep).unwrap();
        let b = extend(&inst.graph, &flipped).unwrap();
        prop_assert_eq!(a.result_word(), b.result_word());
        prop_assert!(verify_certificate(&inst.graph, &flipped, &a.mirrored()).is_ok());
        if let (Some(la), Some(lb)) = (class_of(&a), class_of(&b)) {
            prop_assert_eq!(la, lb);
            prop_assert_eq!(a.mirrored().to_text(&inst.graph), b.to_text(&inst.graph));
        }
    }

    #[test]
    fn rank_compression_keeps_the_decision(inst in instance()) {
        let r = rank_compress(&inst.rep);
        prop_assert_eq!(is_extendible(&inst.graph, &r).unwrap(), is_extendible(&inst.graph, &inst.rep).unwrap());
        let pre: Vec<_> = inst.rep.predrawn().collect();
        for (a, ia) in &pre {
            for (b, ib) in &pre {
                let (ca, cb) = (r.get(*a).unwrap(), r.get(*b).unwrap());
                prop_assert_eq!(ia.l.cmp(&ib.r), ca.l.cmp(&cb.r));
                prop_assert_eq!(ia.l.cmp(&ib.l), ca.l.cmp(&cb.l));
                prop_assert_eq!(ia.r.cmp(&ib.r), ca.r.cmp(&cb.r));
            }
        }
        prop_assert_eq!(rank_compress(&r), r);
    }

    #[test]
    fn text_round_trips(inst in instance()) {
        let g = Graph::parse(&inst.graph.to_text()).unwrap();
        prop_assert_eq!(g.to_text(), inst.graph.to_text());
        let rep = PartialRepresentation::parse(&inst.rep.to_text(&inst.graph), &g).unwrap();
        prop_assert_eq!(rep.to_text(&g), inst.rep.to_text(&inst.graph));
        let cert = extend(&inst.graph, &inst.rep).unwrap();
        let text = cert.to_text(&inst.graph);
        let back = Certificate::parse(&text, &g).unwrap();
        prop_assert_eq!(back.to_text(&g), text);
        prop_assert!(verify_certificate(&g, &rep, &back).is_ok());
    }

    #[test]
    fn damaged_certificates_never_panic(inst in instance(), line in any::<prop::sample::Index>(), word in any::<prop::sample::Index>(), pick in any::<prop::sample::Index>()) {
        let cert = extend(&inst.graph, &inst.rep).unwrap();
        let text = cert.to_text(&inst.graph);
        let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
        let i = line.index(lines.len());
        let mut words: Vec<String> = lines[i].split(' ').map(str::to_string).collect();
        let j = word.index(words.len());
        let names = inst.graph.names();
        words[j] = names[pick.index(names.len())].clone();
        lines[i] = words.join(" ");
        if let Ok(c) = Certificate::parse(&lines.join("\n"), &inst.graph) {
            let _ = verify_certificate(&inst.graph, &inst.rep, &c);
        }
    }
}
