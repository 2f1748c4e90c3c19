//! Acceptance criteria 1 to 10. Runs without the libtest harness so every
//! criterion prints one PASS/FAIL line; the process fails if any criterion does.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tumbug_core::dsl::{parse, parse_bytes, serialize};
use tumbug_core::grammar::{scova_classify, validate, BasicKind, BlockKind, ViolationCode};
use tumbug_core::lexicon::{match_count, modal_concepts, parse_lexicon, select_word, ConceptVector, Entry, Tri};
use tumbug_core::random::random_diagram;
use tumbug_core::templates::{
    build_aspect, build_flowchart, build_pattern, build_primitive, build_syllogism, build_syllogism_ordered, Aspect,
    AspectSpec, BasicPattern, FlowKind, PremiseOrder, PrimitiveAct, SyllogismForm, Tense,
};
use tumbug_core::{
    evaluate_correlation, CorrelationPayload, Diagram, Edge, EdgeKind, Element, ElementKind, Equation, Expr, Id, Op,
    Slot,
};

const LIMIT_SCOVA: Duration = Duration::from_secs(1);
const LIMIT_LEGALITY: Duration = Duration::from_secs(1);
const LIMIT_TEMPLATES: Duration = Duration::from_secs(5);
const LIMIT_ROUND_TRIP: Duration = Duration::from_secs(60);
const CORRELATION_TOLERANCE: f64 = 1e-9;
const CORRELATION_SAMPLES: usize = 10_000;
const ROUND_TRIP_DIAGRAMS: usize = 1000;
const FUZZ_INPUTS: usize = 10_000;
const FUZZ_MAX_LEN: usize = 4096;
const MATCH_VECTORS: usize = 2000;
const DC_MUTATIONS: usize = 10_000;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    let detail = f()?;
    let took = start.elapsed();
    ensure(took <= limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(format!("{detail}; {took:.2?} <= {limit:?}"))
}

fn id(s: &str) -> Id {
    Id::new(s).unwrap()
}

fn scova() -> Check {
    timed(LIMIT_SCOVA, || {
        let kinds = BlockKind::all_concrete();
        let mut image = BTreeSet::new();
        for k in &kinds {
            let b = scova_classify(*k).map_err(|e| format!("{k}: {e}"))?;
            image.insert(b.letter());
        }
        let expected: BTreeSet<char> = ['S', 'C', 'O', 'V', 'A'].into();
        ensure(image == expected, || format!("image {image:?}"))?;
        let basics: BTreeSet<BasicKind> = kinds.iter().filter_map(|k| scova_classify(*k).ok()).collect();
        ensure(basics.len() == 5, || format!("{} basic kinds", basics.len()))?;
        Ok(format!("{} kinds onto {{S,C,O,V,A}}", kinds.len()))
    })
}

/// Expected outcome of each (shape, kind) cell; `None` means legal.
fn expected_cell(shape: &str, kind: EdgeKind) -> Option<ViolationCode> {
    match (shape, kind) {
        ("SolitaryArrow" | "SolitaryNonquan", _) => None,
        (_, EdgeKind::Time) => Some(ViolationCode::TimeAttached),
        ("ArrowIn", EdgeKind::Motion) => Some(ViolationCode::IllegalCombination),
        ("SelfLoop", EdgeKind::Force) => Some(ViolationCode::IllegalSelfLoop),
        _ => None,
    }
}

fn synthesize(shape: &str, kind: EdgeKind) -> Diagram {
    let mut d = Diagram::new();
    if shape != "SolitaryArrow" {
        for n in ["a", "b"] {
            d.insert_element(id(n), Element::labeled(ElementKind::PhysicalObjectCircle, n), None).unwrap();
        }
    }
    let (a, b) = (Some(id("a")), Some(id("b")));
    let (src, dst) = match shape {
        "SolitaryArrow" | "SolitaryNonquan" => (None, None),
        "ArrowOut" => (a, None),
        "ArrowIn" => (None, b),
        "ArrowBetween" => (a, b),
        "SelfLoop" => (a.clone(), a),
        _ => unreachable!(),
    };
    d.insert_edge(id("x"), Edge::new(kind, src, dst).unwrap()).unwrap();
    d
}

fn legality() -> Check {
    timed(LIMIT_LEGALITY, || {
        let shapes = ["SolitaryArrow", "SolitaryNonquan", "ArrowOut", "ArrowIn", "ArrowBetween", "SelfLoop"];
        let kinds = [EdgeKind::Time, EdgeKind::Motion, EdgeKind::Force, EdgeKind::Causation];
        let (mut legal, mut illegal) = (0, 0);
        for shape in shapes {
            for kind in kinds {
                let codes: Vec<ViolationCode> = validate(&synthesize(shape, kind)).into_iter().map(|v| v.code).collect();
                match expected_cell(shape, kind) {
                    None => {
                        ensure(codes.is_empty(), || format!("{shape}/{kind} should be clean, got {codes:?}"))?;
                        legal += 1;
                    }
                    Some(c) => {
                        ensure(codes == [c], || format!("{shape}/{kind} expected [{c}], got {codes:?}"))?;
                        illegal += 1;
                    }
                }
            }
        }
        ensure(legal + illegal == 24, || format!("{} cells", legal + illegal))?;
        Ok(format!("{legal} legal + {illegal} illegal cells"))
    })
}

fn translation() -> Check {
    let ctx = parse_lexicon(include_str!("../data/fixtures/throw_context.table")).map_err(|e| e.to_string())?;
    let lex = parse_lexicon(include_str!("../data/fixtures/throw_lexicon.table")).map_err(|e| e.to_string())?;
    let c1 = ctx.get("baseball", "C1").ok_or("context C1 missing")?;
    let ranked = select_word(c1, &lex).map_err(|e| e.to_string())?;
    let counts: BTreeMap<&str, usize> = ranked.iter().map(|r| (r.word.as_str(), r.count)).collect();
    ensure(counts.get("lancer") == Some(&2), || format!("lancer {:?}", counts.get("lancer")))?;
    ensure(counts.get("jeter") == Some(&1), || format!("jeter {:?}", counts.get("jeter")))?;
    ensure(ranked[0].word == "lancer" && !ranked[0].tied, || format!("selected {}", ranked[0].word))?;
    Ok("lancer=2, jeter=1, selected lancer".into())
}

fn modal() -> Check {
    let can = modal_concepts("can", "permission").map_err(|e| e.to_string())?;
    let want: BTreeSet<&str> = ["Permission", "Request"].into();
    ensure(can.names() == want, || format!("can/permission -> {:?}", can.names()))?;
    let able = modal_concepts("be able to", "ability").map_err(|e| e.to_string())?;
    ensure(able.explicit() == ["Ability"].into(), || format!("explicit {:?}", able.explicit()))?;
    ensure(able.implied() == ["Request"].into(), || format!("implied {:?}", able.implied()))?;
    Ok("can/permission = {Permission, Request}; be able to/ability = {Ability} + (Request)".into())
}

fn water(total: f64) -> CorrelationPayload {
    let slot = |name: &str, owner: &str| Slot { name: name.into(), owner: id(owner), attribute: "weight".into() };
    CorrelationPayload::new(
        vec![slot("w1", "bottle"), slot("w2", "cup")],
        vec![
            Equation::new("w1", Expr::bin(Op::Sub, Expr::Num(total), Expr::slot("w2"))),
            Equation::new("w2", Expr::bin(Op::Sub, Expr::Num(total), Expr::slot("w1"))),
        ],
    )
    .unwrap()
}

fn correlation() -> Check {
    let c = water(100.0);
    let env = |k: &str, v: f64| BTreeMap::from([(k.to_string(), v)]);
    let w1 = evaluate_correlation(&c, &env("w2", 25.0), "w1").map_err(|e| e.to_string())?;
    ensure(w1 == 75.0, || format!("w1 = {w1} for w2 = 25"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for i in 0..CORRELATION_SAMPLES {
        let (given, free) = if i % 2 == 0 { ("w2", "w1") } else { ("w1", "w2") };
        let v = rng.gen_range(0.0..=100.0);
        let solved = evaluate_correlation(&c, &env(given, v), free).map_err(|e| e.to_string())?;
        worst = worst.max((solved + v - 100.0).abs());
    }
    ensure(worst <= CORRELATION_TOLERANCE, || format!("max |w1+w2-100| = {worst:e}"))?;
    Ok(format!("w1=75 for w2=25; max |w1+w2-100| = {worst:e} <= {CORRELATION_TOLERANCE:e}"))
}

fn flowcharts() -> Check {
    let s = ["S1", "S2", "S3", "S4"];
    let cases = [
        (FlowKind::Sequential, "(S1 S2 S3 S4)"),
        (FlowKind::Loop { body_start: 1, body_end: 2, iterations: 2 }, "(S1 S2 S3 S2 S3 S4)"),
        (FlowKind::Branch { take_else: true }, "(S1 S3 S4)"),
    ];
    for (kind, want) in cases {
        let got = build_flowchart(kind, &s).map_err(|e| e.to_string())?.trace_text();
        ensure(got == want, || format!("{kind:?}: {got}"))?;
    }
    Ok("sequential, loop, branch traces exact".into())
}

fn template_sweep() -> Check {
    timed(LIMIT_TEMPLATES, || {
        let mut built: Vec<(String, Diagram)> = Vec::new();
        for act in PrimitiveAct::ALL {
            built.push((act.name().into(), build_primitive(act, act.default_labels()).map_err(|e| e.to_string())?));
        }
        for p in BasicPattern::ALL {
            built.push((p.name().into(), build_pattern(p, p.default_labels()).map_err(|e| e.to_string())?));
        }
        for t in Tense::ALL {
            for a in Aspect::ALL {
                let spec = AspectSpec::new(t, a);
                built.push((spec.name(), build_aspect(spec, "Ken", "call")));
            }
        }
        for f in SyllogismForm::ALL {
            let terms = f.default_terms();
            for (i, d) in build_syllogism(f, [terms[0], terms[1], terms[2]]).map_err(|e| e.to_string())?.into_iter().enumerate() {
                built.push((format!("{}#{i}", f.name()), d));
            }
        }
        let counts = (PrimitiveAct::ALL.len(), BasicPattern::ALL.len(), Tense::ALL.len() * Aspect::ALL.len(), SyllogismForm::ALL.len());
        ensure(counts == (14, 6, 12, 3), || format!("variant counts {counts:?}"))?;
        for (name, d) in &built {
            let v = validate(d);
            ensure(v.is_empty(), || format!("{name}: {:?}", v.iter().map(ToString::to_string).collect::<Vec<_>>()))?;
        }
        Ok(format!("{} diagrams (14 acts, 6 patterns, 12 aspects, 3 syllogisms) clean", built.len()))
    })
}

fn round_trip() -> Check {
    timed(LIMIT_ROUND_TRIP, || {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for i in 0..ROUND_TRIP_DIAGRAMS {
            let d = random_diagram(&mut rng, 1 + i % 40);
            let v = validate(&d);
            ensure(v.is_empty(), || format!("generator produced invalid diagram #{i}: {v:?}"))?;
            let text = serialize(&d);
            let back = parse(&text).map_err(|e| format!("diagram #{i} failed to parse: {e}"))?;
            ensure(back == d, || format!("diagram #{i} changed after parse"))?;
            ensure(serialize(&back) == text, || format!("diagram #{i} text not byte-identical"))?;
        }
        let mut parsed = 0;
        for i in 0..FUZZ_INPUTS {
            let len = rng.gen_range(0..=FUZZ_MAX_LEN);
            let bytes: Vec<u8> = if i % 2 == 0 {
                (0..len).map(|_| rng.gen()).collect()
            } else {
                // Mostly-printable noise built from DSL tokens reaches deeper parser states.
                const TOKENS: &[&str] = &[
                    "elem ", "edge ", "group ", "attr ", "contain ", "meta ", "a", "b", " ", "\n", "=", "\"", "->",
                    "Motion", "Time", "PhysicalObjectCircle", "x=", "1e308", "-", "(", ")", ",", "range[", "\\",
                ];
                let mut s = String::new();
                while s.len() < len {
                    s.push_str(TOKENS[rng.gen_range(0..TOKENS.len())]);
                }
                s.into_bytes()
            };
            let r = catch_unwind(AssertUnwindSafe(|| parse_bytes(&bytes)));
            match r {
                Ok(Ok(_)) => parsed += 1,
                Ok(Err(_)) => {}
                Err(_) => return Err(format!("parser panicked on fuzz input #{i}")),
            }
        }
        Ok(format!("{ROUND_TRIP_DIAGRAMS} diagrams byte-exact; {FUZZ_INPUTS} fuzz inputs, no panic ({parsed} parsed)"))
    })
}

fn barbara_order() -> Check {
    let t = SyllogismForm::Barbara.default_terms();
    let terms = [t[0], t[1], t[2]];
    let major = build_syllogism_ordered(SyllogismForm::Barbara, terms, PremiseOrder::MajorFirst).map_err(|e| e.to_string())?;
    let minor = build_syllogism_ordered(SyllogismForm::Barbara, terms, PremiseOrder::MinorFirst).map_err(|e| e.to_string())?;
    let a = major.last().ok_or("no steps")?.canonicalize();
    let b = minor.last().ok_or("no steps")?.canonicalize();
    ensure(a == b, || "final diagrams differ".into())?;
    ensure(serialize(&a) == serialize(&b), || "final diagram texts differ".into())?;
    Ok("major-first and minor-first final diagrams equal".into())
}

/// Cell rule written out for all nine value pairs.
fn cell(a: Tri, b: Tri) -> usize {
    use Tri::*;
    match (a, b) {
        (True, True) | (False, False) => 1,
        (DontCare, True) | (DontCare, False) | (DontCare, DontCare) => 1,
        (True, DontCare) | (False, DontCare) => 1,
        (True, False) | (False, True) => 0,
    }
}

fn brute(ctx: &[Entry], cand: &[Entry]) -> usize {
    ctx.iter().zip(cand).map(|(a, b)| if a.implied || b.implied { 0 } else { cell(a.value, b.value) }).sum()
}

fn match_oracle() -> Check {
    const TRI: [Tri; 3] = [Tri::True, Tri::False, Tri::DontCare];
    let one = vec!["a".to_string()];
    for a in TRI {
        for b in TRI {
            let x = ConceptVector::from_values(&one, &[a]).unwrap();
            let y = ConceptVector::from_values(&one, &[b]).unwrap();
            let got = match_count(&x, &y).map_err(|e| e.to_string())?;
            ensure(got == cell(a, b), || format!("({a},{b}) -> {got}"))?;
        }
    }
    let schema: Vec<String> = (0..8).map(|i| format!("a{i}")).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let random_entries = |rng: &mut ChaCha8Rng| -> Vec<Entry> {
        (0..8)
            .map(|_| {
                let v = TRI[rng.gen_range(0..3)];
                if rng.gen_bool(0.1) {
                    Entry::implied(v)
                } else {
                    Entry::new(v)
                }
            })
            .collect()
    };
    let vector = |entries: &[Entry]| ConceptVector::new(schema.iter().cloned().zip(entries.iter().copied())).unwrap();
    for _ in 0..MATCH_VECTORS {
        let (ce, de) = (random_entries(&mut rng), random_entries(&mut rng));
        let got = match_count(&vector(&ce), &vector(&de)).map_err(|e| e.to_string())?;
        ensure(got == brute(&ce, &de), || format!("{ce:?} vs {de:?}: {got} != {}", brute(&ce, &de)))?;
    }
    for _ in 0..DC_MUTATIONS {
        let ce: Vec<Entry> = (0..8).map(|_| Entry::new(TRI[rng.gen_range(0..3)])).collect();
        let de: Vec<Entry> = (0..8).map(|_| Entry::new(TRI[rng.gen_range(0..3)])).collect();
        let (c, d) = (vector(&ce), vector(&de));
        let before = match_count(&c, &d).map_err(|e| e.to_string())?;
        let after = match_count(&c, &d.with_entry(rng.gen_range(0..8), Entry::new(Tri::DontCare))).map_err(|e| e.to_string())?;
        ensure(after >= before, || format!("DC mutation lowered {before} to {after}"))?;
    }
    Ok(format!("9 cells, {MATCH_VECTORS} random vectors equal brute force; {DC_MUTATIONS} DC mutations monotone"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 SCOVA totality", scova),
        ("2 legality table conformance", legality),
        ("3 translation worked example", translation),
        ("4 modal rows", modal),
        ("5 correlation water system", correlation),
        ("6 flowchart traces", flowcharts),
        ("7 template sweep", template_sweep),
        ("8 round-trip and fuzz", round_trip),
        ("9 Barbara premise-order invariance", barbara_order),
        ("10 match-count oracle", match_oracle),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let outcome = catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
