use crate::model::{Diagram, EdgeKind, Id, Payload, Value};

use super::GrammarError;

/// Answers "what is `attribute` of `owner`?".
///
/// Falls back to one Relationship hop when the owner itself does not know,
/// taking outgoing Relationship edges in id order. Edges that name an
/// attribute are only followed for that attribute.
pub fn resolve_query(d: &Diagram, owner: &Id, attribute: &str) -> Result<Value, GrammarError> {
    if !d.contains_id(owner.as_str()) {
        return Err(GrammarError::UnknownOwner(owner.clone()));
    }
    if let Some(v) = known(d, owner, attribute) {
        return Ok(v.clone());
    }
    for e in d.edges().values() {
        if e.kind() != EdgeKind::Relationship || e.source() != Some(owner) {
            continue;
        }
        if e.attribute().is_some_and(|a| a != attribute) {
            continue;
        }
        if let Some(v) = e.target().and_then(|t| known(d, t, attribute)) {
            return Ok(v.clone());
        }
    }
    Ok(Value::DK)
}

fn known<'a>(d: &'a Diagram, owner: &Id, attribute: &str) -> Option<&'a Value> {
    d.binding(owner.as_str(), attribute).filter(|v| !v.is_dont_know())
}

/// Resolves the query posed by a placed 0D Marker.
pub fn resolve_marker(d: &Diagram, marker: &Id) -> Result<Value, GrammarError> {
    let e = d.element(marker.as_str()).ok_or_else(|| GrammarError::UnknownOwner(marker.clone()))?;
    match e.payload() {
        Payload::Marker0D { owner: Some(o), attribute: Some(a) } => resolve_query(d, o, a),
        _ => Err(GrammarError::NotAQuery(marker.clone())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Edge, Element, ElementKind};

    fn id(s: &str) -> Id {
        Id::new(s).unwrap()
    }

    #[test]
    fn bobs_car() {
        let mut d = Diagram::new();
        d.insert_element(id("car"), Element::labeled(ElementKind::PhysicalObjectCircle, "Bob's car"), None).unwrap();
        d.bind(&id("car"), "color", Value::text("red")).unwrap();
        let before = d.clone();
        assert_eq!(resolve_query(&d, &id("car"), "color"), Ok(Value::text("red")));
        assert_eq!(resolve_query(&d, &id("car"), "age"), Ok(Value::DK));
        assert_eq!(d, before);
        assert!(resolve_query(&d, &id("bus"), "color").is_err());
    }

    #[test]
    fn one_relationship_hop() {
        let mut d = Diagram::new();
        d.insert_element(id("grace"), Element::labeled(ElementKind::PhysicalObjectCircle, "Grace"), None).unwrap();
        d.insert_element(id("clothes"), Element::labeled(ElementKind::PhysicalObjectCircle, "clothing"), None).unwrap();
        d.bind(&id("grace"), "color", Value::DK).unwrap();
        d.bind(&id("clothes"), "color", Value::text("blue")).unwrap();
        d.insert_edge(id("r"), Edge::between(EdgeKind::Relationship, &id("grace"), &id("clothes")).unwrap()).unwrap();
        assert_eq!(resolve_query(&d, &id("grace"), "color"), Ok(Value::text("blue")));
    }

    #[test]
    fn attribute_specific_link() {
        let mut d = Diagram::new();
        d.insert_element(id("s"), Element::new(ElementKind::PhysicalObjectCircle), None).unwrap();
        d.insert_element(id("m"), Element::new(ElementKind::AggregationBox), None).unwrap();
        d.bind(&id("m"), "mortality", Value::text("mortal")).unwrap();
        d.bind(&id("m"), "size", Value::number(3.0)).unwrap();
        let rel = Edge::between(EdgeKind::Relationship, &id("s"), &id("m")).unwrap().with_attribute("mortality").unwrap();
        d.insert_edge(id("r"), rel).unwrap();
        assert_eq!(resolve_query(&d, &id("s"), "mortality"), Ok(Value::text("mortal")));
        assert_eq!(resolve_query(&d, &id("s"), "size"), Ok(Value::DK));
    }

    #[test]
    fn marker_query() {
        let mut d = Diagram::new();
        d.insert_element(id("car"), Element::new(ElementKind::PhysicalObjectCircle), None).unwrap();
        d.bind(&id("car"), "color", Value::text("red")).unwrap();
        let q = Element::new(ElementKind::Marker0D)
            .with_payload(Payload::Marker0D { owner: Some(id("car")), attribute: Some("color".into()) })
            .unwrap();
        d.insert_element(id("q"), q, None).unwrap();
        assert_eq!(resolve_marker(&d, &id("q")), Ok(Value::text("red")));
        assert!(matches!(resolve_marker(&d, &id("car")), Err(GrammarError::NotAQuery(_))));
    }
}
