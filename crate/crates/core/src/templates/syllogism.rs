//! Barbara, Celarent and Darii drawn as nested and overlapping sets.
//!
//! Terms are given as `[middle, predicate, subject]`. Boxes carry explicit
//! positions in one shared frame so overlap is a property of the drawing.

use crate::model::{Diagram, EdgeKind, Element, ElementKind, Payload, Placement, Value};

use super::{arrow, id, Draft, TemplateError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SyllogismForm {
    Barbara,
    Celarent,
    Darii,
}

impl SyllogismForm {
    pub const ALL: [SyllogismForm; 3] = [SyllogismForm::Barbara, SyllogismForm::Celarent, SyllogismForm::Darii];

    pub fn name(self) -> &'static str {
        match self {
            SyllogismForm::Barbara => "Barbara",
            SyllogismForm::Celarent => "Celarent",
            SyllogismForm::Darii => "Darii",
        }
    }

    pub fn from_name(s: &str) -> Option<SyllogismForm> {
        Self::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(s))
    }

    pub fn default_terms(self) -> &'static [&'static str] {
        match self {
            SyllogismForm::Barbara => &["men", "mortality=mortal", "Socrates"],
            SyllogismForm::Celarent => &["reptiles", "fur", "snakes"],
            SyllogismForm::Darii => &["rabbits", "furry", "pets"],
        }
    }
}

/// Which premise is drawn first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PremiseOrder {
    #[default]
    MajorFirst,
    MinorFirst,
}

/// Three step diagrams: first premise, both premises, conclusion.
pub fn build_syllogism(form: SyllogismForm, terms: [&str; 3]) -> Result<Vec<Diagram>, TemplateError> {
    build_syllogism_ordered(form, terms, PremiseOrder::MajorFirst)
}

pub fn build_syllogism_ordered(
    form: SyllogismForm,
    terms: [&str; 3],
    order: PremiseOrder,
) -> Result<Vec<Diagram>, TemplateError> {
    let s = Syllogism { terms };
    let mut t = Draft::new();
    t.d.set_meta("template", &form.name().to_lowercase());
    let mut steps = Vec::with_capacity(3);
    for major in [order == PremiseOrder::MajorFirst, order == PremiseOrder::MinorFirst] {
        if major {
            s.major(&mut t, form)?;
        } else {
            s.minor(&mut t, form)?;
        }
        steps.push(t.d.clone());
    }
    s.conclusion(&mut t, form);
    steps.push(t.finish());
    Ok(steps)
}

struct Syllogism<'a> {
    terms: [&'a str; 3],
}

fn at(x: f64, y: f64, w: f64, h: f64) -> Placement {
    Placement::new(x, y, w, h).expect("fixed layout")
}

/// Inserts a positioned element unless it is already present.
fn ensure(t: &mut Draft, name: &str, kind: ElementKind, label: &str, p: Placement, parent: Option<&str>) {
    if t.d.element(name).is_none() {
        t.elem(name, Element::labeled(kind, label).with_position(p), parent);
    }
}

impl Syllogism<'_> {
    fn middle(&self, t: &mut Draft, form: SyllogismForm) {
        let parent = (form == SyllogismForm::Darii).then(|| {
            ensure(t, "predicate", ElementKind::AggregationBox, self.terms[1], at(0.0, 0.0, 200.0, 200.0), None);
            "predicate"
        });
        ensure(t, "middle", ElementKind::AggregationBox, self.terms[0], at(0.0, 0.0, 100.0, 100.0), parent);
    }

    /// All M are P / No M are P.
    fn major(&self, t: &mut Draft, form: SyllogismForm) -> Result<(), TemplateError> {
        self.middle(t, form);
        match form {
            SyllogismForm::Barbara => {
                let (attr, value) = predicate(self.terms[1]);
                t.d.bind(&id("middle"), attr, Value::text(value)).map_err(|e| TemplateError::InvalidInput(e.to_string()))?;
            }
            SyllogismForm::Celarent => {
                ensure(t, "predicate", ElementKind::AggregationBox, self.terms[1], at(150.0, 0.0, 100.0, 100.0), None);
                let shade = Element::labeled(ElementKind::Marker2D, &format!("no {}", self.terms[1]))
                    .with_payload(Payload::Marker2D { excludes: vec![id("predicate")] })
                    .expect("marker payload");
                t.elem("allowed", shade, None);
            }
            SyllogismForm::Darii => {}
        }
        Ok(())
    }

    /// All S are M / Some S are M.
    fn minor(&self, t: &mut Draft, form: SyllogismForm) -> Result<(), TemplateError> {
        self.middle(t, form);
        let s = self.terms[2];
        match form {
            SyllogismForm::Barbara => {
                let e = Element::labeled(ElementKind::PhysicalObjectCircle, s).with_position(at(40.0, 40.0, 20.0, 20.0));
                t.elem("subject", e, Some("middle"));
            }
            SyllogismForm::Celarent => {
                ensure(t, "subject", ElementKind::AggregationBox, s, at(20.0, 20.0, 40.0, 40.0), Some("middle"));
            }
            SyllogismForm::Darii => {
                // Sits across the corner that the middle box shares with the predicate box.
                ensure(t, "subject", ElementKind::AggregationBox, s, at(-50.0, -50.0, 100.0, 100.0), None);
            }
        }
        Ok(())
    }

    fn conclusion(&self, t: &mut Draft, form: SyllogismForm) {
        match form {
            SyllogismForm::Barbara => {
                let (attr, _) = predicate(self.terms[1]);
                let rel = arrow(EdgeKind::Relationship, "subject", "middle").with_attribute(attr).expect("relationship");
                t.edge("inherits", rel);
            }
            SyllogismForm::Celarent => {
                t.edge("excluded", arrow(EdgeKind::Relationship, "subject", "predicate").with_label("no"));
            }
            SyllogismForm::Darii => {
                let e = Element::labeled(ElementKind::DataPoint, &format!("some {}", self.terms[2]))
                    .with_position(at(20.0, 20.0, 5.0, 5.0));
                t.elem("witness", e, Some("middle"));
            }
        }
    }
}

/// `attr=value` binds a value; a bare word binds `word = "true"`.
fn predicate(term: &str) -> (&str, &str) {
    term.split_once('=').map(|(a, v)| (a.trim(), v.trim())).unwrap_or((term, "true"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::validate;

    fn run(form: SyllogismForm, order: PremiseOrder) -> Vec<Diagram> {
        let terms = form.default_terms();
        build_syllogism_ordered(form, [terms[0], terms[1], terms[2]], order).unwrap()
    }

    fn placement(d: &Diagram, id: &str) -> Placement {
        *d.element(id).unwrap().position().unwrap()
    }

    #[test]
    fn steps_validate_and_order_is_irrelevant() {
        for form in SyllogismForm::ALL {
            let a = run(form, PremiseOrder::MajorFirst);
            let b = run(form, PremiseOrder::MinorFirst);
            assert_eq!(a.len(), 3);
            for d in a.iter().chain(&b) {
                assert!(validate(d).is_empty(), "{}: {:?}", form.name(), validate(d));
            }
            assert_ne!(a[0], b[0]);
            assert_eq!(a[2].canonicalize(), b[2].canonicalize(), "{}", form.name());
        }
    }

    #[test]
    fn barbara_final_step() {
        let d = run(SyllogismForm::Barbara, PremiseOrder::MajorFirst).pop().unwrap();
        let socrates = d.elements().iter().find(|(_, e)| e.label() == Some("Socrates")).unwrap().0;
        let men = d.parent(socrates.as_str()).unwrap();
        assert_eq!(d.element(men.as_str()).unwrap().label(), Some("men"));
        assert_eq!(d.binding(men.as_str(), "mortality"), Some(&Value::text("mortal")));
        let rel = d.edges().values().find(|e| e.kind() == EdgeKind::Relationship).unwrap();
        assert_eq!(rel.source(), Some(socrates));
        assert_eq!(rel.attribute(), Some("mortality"));
    }

    #[test]
    fn celarent_layout() {
        let d = run(SyllogismForm::Celarent, PremiseOrder::MajorFirst).pop().unwrap();
        assert_eq!(d.parent("subject").map(|p| p.as_str()), Some("middle"));
        assert!(!placement(&d, "middle").overlaps(&placement(&d, "predicate")));
        let Payload::Marker2D { excludes } = d.element("allowed").unwrap().payload() else { panic!() };
        assert_eq!(excludes, &[id("predicate")]);
    }

    #[test]
    fn darii_overlap_lies_within_middle() {
        let d = run(SyllogismForm::Darii, PremiseOrder::MajorFirst).pop().unwrap();
        let (pred, mid, subj) = (placement(&d, "predicate"), placement(&d, "middle"), placement(&d, "subject"));
        assert!(subj.overlaps(&mid));
        // Any part of the subject box inside the predicate box is also inside the middle box.
        let ix = (subj.x.max(pred.x), (subj.x + subj.w).min(pred.x + pred.w));
        let iy = (subj.y.max(pred.y), (subj.y + subj.h).min(pred.y + pred.h));
        assert!(ix.0 >= mid.x && ix.1 <= mid.x + mid.w && iy.0 >= mid.y && iy.1 <= mid.y + mid.h);
        let w = placement(&d, "witness");
        assert!(w.overlaps(&subj) && w.overlaps(&mid));
    }

    #[test]
    fn bare_predicate() {
        assert_eq!(predicate("mortal"), ("mortal", "true"));
        assert_eq!(predicate("mortality = mortal"), ("mortality", "mortal"));
        assert!(build_syllogism(SyllogismForm::Barbara, ["men", "=mortal", "x"]).is_err());
    }
}
