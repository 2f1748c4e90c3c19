use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tumbug_core::dsl::{parse, serialize};
use tumbug_core::grammar::validate;
use tumbug_core::heuristics::{check, requirements_for, Level, RequiredKind, TriggerTag};
use tumbug_core::random::random_diagram;
use tumbug_core::render::{render, RenderOptions};

fn diagram(seed: u64, size: usize) -> tumbug_core::Diagram {
    random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), size)
}

fn tags() -> impl Strategy<Value = Vec<TriggerTag>> {
    proptest::sample::subsequence(TriggerTag::ALL.to_vec(), 0..=TriggerTag::ALL.len())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip(seed in any::<u64>(), size in 1usize..30) {
        let d = diagram(seed, size);
        let text = serialize(&d);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn canonical_form_is_stable(seed in any::<u64>(), size in 1usize..30) {
        let d = diagram(seed, size);
        let c = d.canonicalize();
        prop_assert_eq!(c.canonicalize(), c.clone());
        prop_assert_eq!(validate(&c).len(), validate(&d).len());
    }

    #[test]
    fn render_is_deterministic(seed in any::<u64>(), size in 1usize..20) {
        let d = diagram(seed, size);
        let o = RenderOptions::default();
        let a = render(&d, &o).unwrap();
        prop_assert_eq!(&a, &render(&d, &o).unwrap());
        for id in d.elements().keys() {
            let needle = format!("id=\"{id}\"");
            prop_assert_eq!(a.matches(&needle).count(), 1);
        }
    }

    #[test]
    fn more_tags_never_drop_requirements(a in tags(), b in tags()) {
        let small = requirements_for(a.clone());
        let big = requirements_for(a.into_iter().chain(b));
        for k in small.mandatory.keys() {
            prop_assert!(big.mandatory.contains_key(k));
        }
        for k in small.advisory.keys() {
            prop_assert!(big.mandatory.contains_key(k) || big.advisory.contains_key(k));
        }
    }

    #[test]
    fn check_agrees_with_census(seed in any::<u64>(), size in 1usize..30, t in tags()) {
        let d = diagram(seed, size);
        let req = requirements_for(t);
        let report = check(&d, &req);
        for e in &report.entries {
            let direct = match e.kind {
                RequiredKind::Element(k) => d.elements().values().filter(|x| x.kind() == k).count(),
                RequiredKind::Edge(k) => d.edges().values().filter(|x| x.kind() == k).count(),
                _ => e.kind.census(&d),
            };
            prop_assert_eq!(e.count, direct);
        }
        let missing = report.missing(Level::Mandatory);
        prop_assert_eq!(report.satisfied(), missing.is_empty());
        for k in req.mandatory.keys() {
            prop_assert_eq!(missing.contains(k), k.census(&d) == 0);
        }
    }
}
