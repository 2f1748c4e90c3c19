//! Arithmetic as data flowing through a virtual operator.

use crate::model::{fmt_number, Diagram, EdgeKind, ElementKind, Value};

use super::{arrow, Draft, TemplateError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Operator {
    Add,
    Sub,
    Mul,
    Div,
}

impl Operator {
    pub const ALL: [Operator; 4] = [Operator::Add, Operator::Sub, Operator::Mul, Operator::Div];

    pub fn symbol(self) -> &'static str {
        match self {
            Operator::Add => "+",
            Operator::Sub => "-",
            Operator::Mul => "*",
            Operator::Div => "/",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Operator> {
        Self::ALL.into_iter().find(|o| o.symbol() == s)
    }

    pub fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            Operator::Add => a + b,
            Operator::Sub => a - b,
            Operator::Mul => a * b,
            Operator::Div => a / b,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Arithmetic {
    pub diagram: Diagram,
    pub value: f64,
}

/// Left fold of `inputs` under `op`, drawn as input Data circles joined by
/// Causation arrows to an output Data circle on a timeline.
pub fn build_arithmetic(op: &str, inputs: &[f64]) -> Result<Arithmetic, TemplateError> {
    let operator = Operator::from_symbol(op).ok_or_else(|| TemplateError::UnsupportedOperator(op.to_string()))?;
    let (first, rest) = inputs.split_first().ok_or_else(|| TemplateError::InvalidInput("no operands".into()))?;
    if inputs.iter().any(|x| !x.is_finite()) {
        return Err(TemplateError::InvalidInput("operands must be finite".into()));
    }
    let value = rest.iter().fold(*first, |acc, x| operator.apply(acc, *x));
    if !value.is_finite() {
        return Err(TemplateError::NonFiniteResult);
    }
    let mut t = Draft::new();
    t.time_axis("time");
    t.circle("result", ElementKind::DataObjectCircle, &fmt_number(value), None);
    t.bind("result", "value", Value::number(value));
    for (i, x) in inputs.iter().enumerate() {
        let name = format!("input{}", i + 1);
        t.circle(&name, ElementKind::DataObjectCircle, &fmt_number(*x), None);
        t.bind(&name, "value", Value::number(*x));
        t.edge(&format!("send{}", i + 1), arrow(EdgeKind::Causation, &name, "result").with_label(operator.symbol()));
    }
    t.d.set_meta("template", &format!("arithmetic:{}", operator.symbol()));
    Ok(Arithmetic { diagram: t.finish(), value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::validate;
    use proptest::prelude::*;

    #[test]
    fn one_plus_two() {
        let a = build_arithmetic("+", &[1.0, 2.0]).unwrap();
        assert_eq!(a.value, 3.0);
        assert_eq!(a.diagram.element("result").unwrap().label(), Some("3"));
        assert!(validate(&a.diagram).is_empty());
        assert!(a.diagram.edges().values().any(|e| e.kind() == EdgeKind::Time));
        assert_eq!(build_arithmetic("+", &[0.0, 0.0]).unwrap().value, 0.0);
    }

    #[test]
    fn errors() {
        assert_eq!(build_arithmetic("^", &[1.0, 2.0]), Err(TemplateError::UnsupportedOperator("^".into())));
        assert_eq!(build_arithmetic("/", &[1.0, 0.0]), Err(TemplateError::NonFiniteResult));
        assert!(matches!(build_arithmetic("+", &[]), Err(TemplateError::InvalidInput(_))));
    }

    proptest! {
        #[test]
        fn multiplication_matches(a in -1e6f64..1e6, b in -1e6f64..1e6) {
            let r = build_arithmetic("*", &[a, b]).unwrap();
            prop_assert_eq!(r.value, a * b);
            prop_assert_eq!(r.diagram.binding("result", "value"), Some(&Value::number(a * b)));
        }
    }
}
