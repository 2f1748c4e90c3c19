//! Static SVG rendering.
//!
//! Output is a pure function of the diagram and options. Every element,
//! edge and group becomes exactly one `<g>` carrying its id; shared
//! definitions use ids with a `def.` prefix, which diagram ids cannot contain.

mod layout;

use thiserror::Error;

use crate::grammar::{validate, Violation};
use crate::lexicon::modal_icon;
use crate::model::{
    Diagram, Edge, EdgeKind, Element, ElementKind, GrammaticalRole, Group, Id, Payload, RelDirection, SwirlyPayload, Value,
};

use layout::{layout, rides_on_something, Axis, EdgePath, Layout, Rect, PAD};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("diagram has {} violation(s), first: {}", .0.len(), .0[0])]
    InvalidDiagram(Vec<Violation>),
    #[error("invalid render options: {0}")]
    InvalidOptions(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// Fill object circles by grammatical role.
    pub color: bool,
    pub width: f64,
    pub height: f64,
    pub font_size: f64,
    pub hatch_spacing: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { color: false, width: 800.0, height: 600.0, font_size: 12.0, hatch_spacing: 6.0 }
    }
}

impl RenderOptions {
    pub fn check(&self) -> Result<(), RenderError> {
        for (name, v) in [
            ("width", self.width),
            ("height", self.height),
            ("font size", self.font_size),
            ("hatch spacing", self.hatch_spacing),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(RenderError::InvalidOptions(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// Fill for a grammatical role when color is on.
pub fn role_color(role: GrammaticalRole) -> &'static str {
    match role {
        GrammaticalRole::Subject => "#f4a6a6",
        GrammaticalRole::DirectObject => "#a6c8f4",
        GrammaticalRole::IndirectObject => "#b4e6a6",
    }
}

/// Renders a diagram that validates cleanly.
pub fn render(d: &Diagram, o: &RenderOptions) -> Result<String, RenderError> {
    o.check()?;
    let violations = validate(d);
    if !violations.is_empty() {
        return Err(RenderError::InvalidDiagram(violations));
    }
    let lay = layout(d, o.font_size);
    let mut s = Svg { d, o, lay: &lay, out: String::new() };
    s.document();
    Ok(s.out)
}

/// Compact decimal: at most two places, no trailing zeros, no `-0`.
fn num(x: f64) -> String {
    let r = (x * 100.0).round() / 100.0;
    let r = if r == 0.0 { 0.0 } else { r };
    let t = format!("{r:.2}");
    t.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn esc(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// `attr = value` as shown on an Attribute Line; text values are unquoted.
fn binding_text(attr: &str, v: &Value) -> String {
    match v {
        Value::Text(t) => format!("{attr} = {t}"),
        other => format!("{attr} = {other}"),
    }
}

fn kind_class(k: ElementKind) -> String {
    let mut out = String::new();
    for (i, c) in k.name().chars().enumerate() {
        if c.is_ascii_uppercase() && i > 0 && !out.ends_with('-') {
            let prev_upper = k.name().as_bytes()[i - 1].is_ascii_uppercase();
            if !prev_upper {
                out.push('-');
            }
        }
        out.push(c.to_ascii_lowercase());
    }
    out
}

struct Svg<'a> {
    d: &'a Diagram,
    o: &'a RenderOptions,
    lay: &'a Layout,
    out: String,
}

impl Svg<'_> {
    fn line(&mut self, s: &str) {
        self.out.push_str(s);
        self.out.push('\n');
    }

    fn text(&mut self, x: f64, y: f64, class: &str, anchor: &str, body: &str) {
        let s = format!(
            r#"<text class="{class}" x="{}" y="{}" text-anchor="{anchor}">{}</text>"#,
            num(x),
            num(y),
            esc(body)
        );
        self.line(&s);
    }

    fn document(&mut self) {
        let margin = 24.0;
        let b = self.lay.bounds.map(|r| Rect::new(r.x - margin, r.y - margin, r.w + 2.0 * margin, r.h + 2.0 * margin));
        let vb = b.unwrap_or(Rect::new(0.0, 0.0, self.o.width, self.o.height));
        let head = format!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}" font-family="sans-serif" font-size="{}">"#,
            num(self.o.width),
            num(self.o.height),
            num(vb.x),
            num(vb.y),
            num(vb.w),
            num(vb.h),
            num(self.o.font_size)
        );
        self.line(r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        self.line(&head);
        if let Some(t) = self.d.meta().get("title") {
            let t = format!("<title>{}</title>", esc(t));
            self.line(&t);
        }
        self.defs();
        self.line(r#"<g class="axes">"#);
        for (id, axis) in &self.lay.axes {
            self.axis(id, axis);
        }
        self.line("</g>");
        self.line(r#"<g class="elements">"#);
        // Appendages go after bodies so the body fill does not hide them.
        let mut order: Vec<(usize, bool, &Id)> = self
            .d
            .elements()
            .iter()
            .map(|(id, e)| (self.depth(id), e.object().is_some_and(|o| o.appendage_of.is_some()), id))
            .collect();
        order.sort();
        for (_, _, id) in order {
            self.element(id);
        }
        self.line("</g>");
        self.line(r#"<g class="edges">"#);
        for (id, e) in self.d.edges() {
            if e.kind() != EdgeKind::Time {
                self.edge(id, e);
            }
        }
        self.line("</g>");
        self.line(r#"<g class="groups">"#);
        for (id, g) in self.d.groups() {
            self.group(id, g);
        }
        self.line("</g>");
        self.line("</svg>");
    }

    fn depth(&self, id: &Id) -> usize {
        let mut n = 0;
        let mut cur = id.as_str();
        while let Some(p) = self.d.parent(cur) {
            n += 1;
            cur = p.as_str();
        }
        n
    }

    fn defs(&mut self) {
        let h = num(self.o.hatch_spacing);
        let sw = num(self.o.hatch_spacing / 4.0);
        self.line("<defs>");
        self.line(r#"<marker id="def.arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="8" markerHeight="8" orient="auto"><path d="M0,0 L10,5 L0,10 z"/></marker>"#);
        self.line(r#"<marker id="def.arrow-open" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="9" markerHeight="9" orient="auto"><path d="M0,0 L10,5 L0,10" fill="none" stroke="black"/></marker>"#);
        self.line(r#"<marker id="def.arrow-mid" viewBox="0 0 10 10" refX="5" refY="5" markerWidth="9" markerHeight="9" orient="auto"><path d="M0,0 L10,5 L0,10 z"/></marker>"#);
        self.line(r#"<marker id="def.arrow-mid-back" viewBox="0 0 10 10" refX="5" refY="5" markerWidth="9" markerHeight="9" orient="auto"><path d="M10,0 L0,5 L10,10 z"/></marker>"#);
        self.line(r#"<marker id="def.arrow-mid-both" viewBox="0 0 20 10" refX="10" refY="5" markerWidth="14" markerHeight="7" orient="auto"><path d="M10,0 L20,5 L10,10 z M10,0 L0,5 L10,10 z"/></marker>"#);
        for (name, angle) in [("def.hatch-pos45", 45), ("def.hatch-neg45", -45)] {
            let p = format!(
                r#"<pattern id="{name}" width="{h}" height="{h}" patternUnits="userSpaceOnUse" patternTransform="rotate({angle})"><line x1="0" y1="0" x2="0" y2="{h}" stroke="black" stroke-width="{sw}"/></pattern>"#
            );
            self.line(&p);
        }
        self.line("</defs>");
    }

    fn axis(&mut self, id: &Id, a: &Axis) {
        let e = &self.d.edges()[id];
        let open = format!(r#"<g id="{id}" class="edge time">"#);
        self.line(&open);
        let l = format!(
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="2" marker-end="url(#def.arrow)"/>"#,
            num(a.x0),
            num(a.y0),
            num(a.x1),
            num(a.y1)
        );
        self.line(&l);
        if a.now_tick {
            let (x, y) = a.at(0.0);
            let t = format!(r#"<line class="now" x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="black"/>"#, num(x - 8.0), num(x + 8.0), y = num(y));
            self.line(&t);
            self.text(x - 12.0, y + 4.0, "now", "end", "0");
        }
        if let Some(l) = e.label() {
            self.text(a.x0, a.y0 - 6.0, "edge-label", "middle", l);
        }
        self.bindings_at(id.as_str(), a.x0 + 10.0, a.y0 + 14.0);
        self.line("</g>");
    }

    fn style_for(&self, e: &Element) -> String {
        let fill = match (self.o.color, e.object().and_then(|o| o.role)) {
            (true, Some(r)) if e.kind() == ElementKind::PhysicalObjectCircle || e.kind() == ElementKind::DataObjectCircle => {
                role_color(r)
            }
            _ => "white",
        };
        format!(r#"fill="{fill}" stroke="black""#)
    }

    fn element(&mut self, id: &Id) {
        let e = &self.d.elements()[id];
        let class = kind_class(e.kind());
        let open = format!(r#"<g id="{id}" class="elem {class}">"#);
        self.line(&open);
        if rides_on_something(self.d, id) {
            self.rider(e);
        } else if let Some(r) = self.lay.rects.get(id).or_else(|| self.lay.junctions.get(id)).copied() {
            self.shape(e, r);
            if let Some(l) = e.label() {
                self.label(e, r, l);
            }
            let lines = self.d.bindings_of(id.as_str()).count();
            if lines > 0 {
                let (x, y) = (r.right() + 4.0, r.bottom() + 2.0);
                let s = format!(
                    r#"<line class="attribute-line" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
                    num(r.cx() + r.w * 0.35),
                    num(r.cy() + r.h * 0.35),
                    num(x),
                    num(y)
                );
                self.line(&s);
                self.bindings_at(id.as_str(), x + 2.0, y + 12.0);
            }
        }
        self.line("</g>");
    }

    fn label(&mut self, e: &Element, r: Rect, l: &str) {
        use ElementKind::*;
        match e.kind() {
            VerbatimBox | DescriptiveBox | AggregationBox | CAAggregationBox | XorBox | DataSetBox | ZoomBoxPair
            | CorrelationBox => self.text(r.x + 6.0, r.y + self.o.font_size + 3.0, "label", "start", l),
            SensorBar | ValueBar | Marker2D | Cell => self.text(r.cx(), r.bottom() + self.o.font_size + 2.0, "label", "middle", l),
            LabelString => self.text(r.x, r.cy() + self.o.font_size / 3.0, "label", "start", l),
            _ => self.text(r.cx(), r.cy() + self.o.font_size / 3.0, "label", "middle", l),
        }
    }

    fn bindings_at(&mut self, owner: &str, x: f64, y: f64) {
        let lines: Vec<String> = self.d.bindings_of(owner).map(|(a, v)| binding_text(&a.to_string(), v)).collect();
        for (i, t) in lines.iter().enumerate() {
            self.text(x, y + i as f64 * 15.0, "binding", "start", t);
        }
    }

    fn rect(&mut self, r: Rect, extra: &str) {
        let s = format!(
            r#"<rect x="{}" y="{}" width="{}" height="{}" {extra}/>"#,
            num(r.x),
            num(r.y),
            num(r.w),
            num(r.h)
        );
        self.line(&s);
    }

    fn ellipse(&mut self, r: Rect, extra: &str) {
        if (r.w - r.h).abs() < 1e-9 {
            let s = format!(r#"<circle cx="{}" cy="{}" r="{}" {extra}/>"#, num(r.cx()), num(r.cy()), num(r.w / 2.0));
            self.line(&s);
        } else {
            let s = format!(
                r#"<ellipse cx="{}" cy="{}" rx="{}" ry="{}" {extra}/>"#,
                num(r.cx()),
                num(r.cy()),
                num(r.w / 2.0),
                num(r.h / 2.0)
            );
            self.line(&s);
        }
    }

    fn shape(&mut self, e: &Element, r: Rect) {
        use ElementKind::*;
        let style = self.style_for(e);
        match e.kind() {
            PhysicalObjectCircle => {
                let w = if e.object().is_some_and(|o| o.end_effector) { 2.5 } else { 1.5 };
                self.ellipse(r, &format!(r#"{style} stroke-width="{w}""#));
            }
            DataObjectCircle => self.ellipse(r, &format!(r#"{style} stroke-width="1.5" stroke-dasharray="2,3""#)),
            CAObjectCircle => {
                self.ellipse(r, &format!(r#"{style} stroke-width="1.5""#));
                self.text(r.cx(), r.bottom() - 6.0, "tag", "middle", "C-A");
            }
            StateCircle => self.ellipse(r, r#"fill="white" stroke="black" stroke-width="1.5""#),
            DataPoint | Marker0D => self.ellipse(r, r#"fill="black" stroke="none""#),
            Cell => self.rect(r, r#"fill="white" stroke="black""#),
            SensorBar => self.rect(r, r#"fill="url(#def.hatch-neg45)" stroke="black""#),
            Marker1D => {
                let s = format!(
                    r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="2"/>"#,
                    num(r.x),
                    num(r.bottom()),
                    num(r.right()),
                    num(r.y)
                );
                self.line(&s);
            }
            Marker2D => self.rect(r, r#"fill="url(#def.hatch-pos45)" stroke="none""#),
            VerbatimBox => {
                self.rect(r, r#"fill="none" stroke="black" stroke-width="1.5""#);
                self.rect(Rect::new(r.x + 4.0, r.y + 4.0, r.w - 8.0, r.h - 8.0), r#"fill="none" stroke="black" stroke-width="1.5""#);
            }
            DescriptiveBox => self.rect(r, r#"fill="none" stroke="black" stroke-width="3""#),
            AggregationBox => self.rect(r, r#"fill="none" stroke="black" stroke-width="1""#),
            CAAggregationBox => self.rect(r, r#"fill="none" stroke="black" stroke-width="1" rx="6""#),
            XorBox => {
                self.rect(r, r#"fill="white" stroke="black" stroke-width="1""#);
                self.text(r.right() - 4.0, r.y + self.o.font_size, "tag", "end", "XOR");
            }
            DataSetBox => self.rect(r, r#"fill="none" stroke="black" stroke-width="1" stroke-dasharray="8,3""#),
            ZoomBoxPair => {
                self.rect(r, r#"fill="none" stroke="black""#);
                let small = Rect::new(r.x - PAD * 2.0, r.y, PAD, PAD);
                self.rect(small, r#"fill="none" stroke="black""#);
                let s = format!(
                    r#"<path class="zoom" d="M{},{} L{},{} M{},{} L{},{}" stroke="black" fill="none"/>"#,
                    num(small.right()),
                    num(small.y),
                    num(r.x),
                    num(r.y),
                    num(small.right()),
                    num(small.bottom()),
                    num(r.x),
                    num(r.bottom())
                );
                self.line(&s);
            }
            SwirlyArray => {
                if let Payload::Swirly(p) = e.payload() {
                    self.swirly(p, r);
                }
            }
            ModalVerbIcon => {
                self.rect(r, r#"fill="none" stroke="black" rx="10""#);
                if let Payload::ModalVerb { verb: Some(v), meaning: Some(m) } = e.payload() {
                    match modal_icon(v, m) {
                        Ok(p) => self.swirly(&p, r),
                        Err(_) => self.text(r.cx(), r.cy(), "tag", "middle", &format!("{v} ({m})")),
                    }
                }
            }
            ValueBar => {
                self.rect(r, r#"fill="white" stroke="black""#);
                if let Payload::ValueBar { value: Some(v) } = e.payload() {
                    self.text(r.cx(), r.cy() + 4.0, "value", "middle", &v.to_string());
                }
                for x in [r.x, r.right()] {
                    let s = format!(
                        r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="black"/>"#,
                        num(r.y - 4.0),
                        num(r.bottom() + 4.0),
                        x = num(x)
                    );
                    self.line(&s);
                }
            }
            CorrelationBox => {
                self.rect(r, r#"fill="white" stroke="black""#);
                if let Payload::Correlation(c) = e.payload() {
                    let eqs: Vec<String> = c.equations().iter().map(|q| q.to_string()).collect();
                    for (i, q) in eqs.iter().enumerate() {
                        self.text(r.x + 6.0, r.y + 34.0 + i as f64 * 15.0, "equation", "start", q);
                    }
                }
            }
            TimeAnchor => self.text(r.x, r.cy(), "anchor", "start", "|"),
            LabelString => {}
            AttendRing => self.ellipse(r, r#"fill="none" stroke="black" stroke-width="2""#),
            MotivationTriangle => {
                let s = format!(
                    r#"<polygon points="{},{} {},{} {},{}" fill="white" stroke="black"/>"#,
                    num(r.cx()),
                    num(r.y),
                    num(r.right()),
                    num(r.bottom()),
                    num(r.x),
                    num(r.bottom())
                );
                self.line(&s);
                if let Payload::Motivation(m) = e.payload() {
                    let marks: Vec<String> = m.markers().iter().map(|(l, v)| format!("{}{}", l.keyword(), v.sign())).collect();
                    self.text(r.cx(), r.bottom() - 6.0, "tag", "middle", &marks.join(" "));
                }
            }
            RobinsonIcon => {
                let (cx, cy, rad) = (r.cx(), r.cy(), r.w.min(r.h) / 2.0);
                let pts: Vec<String> = (0..6)
                    .map(|i| {
                        let a = std::f64::consts::FRAC_PI_3 * i as f64;
                        format!("{},{}", num(cx + rad * a.cos()), num(cy + rad * a.sin()))
                    })
                    .collect();
                let s = format!(r#"<polygon points="{}" fill="white" stroke="black"/>"#, pts.join(" "));
                self.line(&s);
                if let Payload::Robinson(p) = e.payload() {
                    self.text(cx, cy + 4.0, "tag", "middle", &p.valence().sign().to_string());
                }
            }
        }
    }

    fn swirly(&mut self, p: &SwirlyPayload, r: Rect) {
        let (cx, cy) = (r.cx(), r.cy());
        let extent = p.cells().iter().fold(1.0f64, |m, c| m.max(c.x.abs()).max(c.y.abs()));
        let k = (r.w.min(r.h) / 2.0 - 8.0) / extent;
        for c in p.cells() {
            let on = p.active().contains(&c.id);
            let fill = if on { "black" } else { "white" };
            let s = format!(
                r#"<rect class="cell" x="{}" y="{}" width="8" height="8" fill="{fill}" stroke="black"><title>{}</title></rect>"#,
                num(cx + c.x * k - 4.0),
                num(cy + c.y * k - 4.0),
                esc(&c.id)
            );
            self.line(&s);
        }
    }

    /// Anchors and Attend Rings drawn where they are attached.
    fn rider(&mut self, e: &Element) {
        match e.payload() {
            Payload::TimeAnchor(a) => {
                let Some(axis) = a.axis.as_ref().and_then(|ax| self.lay.axes.get(ax)) else { return };
                let (x, y) = axis.at(a.t);
                let s = format!(r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="black"/>"#, num(x - 6.0), num(x + 6.0), y = num(y));
                self.line(&s);
                let label = match (e.label(), a.role) {
                    (Some(l), _) => l.to_string(),
                    (None, crate::model::AnchorRole::Now) => "0".to_string(),
                    (None, r) => r.keyword().to_string(),
                };
                self.text(x + 10.0, y + 4.0, "anchor", "start", &label);
            }
            Payload::AttendRing { on: Some(on) } => {
                let Some(path) = self.lay.paths.get(on) else { return };
                let (x, y) = path.midpoint();
                let s = format!(
                    r#"<ellipse cx="{}" cy="{}" rx="10" ry="16" fill="none" stroke="black" stroke-width="2"/>"#,
                    num(x),
                    num(y)
                );
                self.line(&s);
            }
            _ => {}
        }
    }

    fn edge(&mut self, id: &Id, e: &Edge) {
        let Some(path) = self.lay.paths.get(id).cloned() else { return };
        let kind = e.kind();
        let open = format!(r#"<g id="{id}" class="edge {}">"#, kind.name().to_lowercase());
        self.line(&open);
        let d = match path {
            EdgePath::Line { x1, y1, x2, y2 } => {
                if kind == EdgeKind::Relationship {
                    let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
                    format!("M{},{} L{},{} L{},{}", num(x1), num(y1), num(mx), num(my), num(x2), num(y2))
                } else {
                    format!("M{},{} L{},{}", num(x1), num(y1), num(x2), num(y2))
                }
            }
            EdgePath::Loop { x1, y1, x2, y2, lift } => format!(
                "M{},{} C{},{} {},{} {},{}",
                num(x1),
                num(y1),
                num(x1 + lift * 0.5),
                num(y1 - lift),
                num(x2 - lift * 0.5),
                num(y2 - lift),
                num(x2),
                num(y2)
            ),
        };
        let style = match kind {
            EdgeKind::Motion => r#"stroke="black" stroke-width="1.5" marker-end="url(#def.arrow)""#.to_string(),
            EdgeKind::Force => r#"stroke="black" stroke-width="4" marker-end="url(#def.arrow)""#.to_string(),
            EdgeKind::Causation => r#"stroke="black" stroke-width="1.5" marker-end="url(#def.arrow-open)""#.to_string(),
            EdgeKind::Relationship => {
                let m = match e.direction().unwrap_or(RelDirection::Forward) {
                    RelDirection::Forward => "def.arrow-mid",
                    RelDirection::Backward => "def.arrow-mid-back",
                    RelDirection::Both => "def.arrow-mid-both",
                };
                format!(r#"stroke="black" stroke-width="1.5" stroke-dasharray="1,4" stroke-linecap="round" marker-mid="url(#{m})""#)
            }
            EdgeKind::Tube | EdgeKind::Time => String::new(),
        };
        if kind == EdgeKind::Tube {
            let outer = format!(r#"<path d="{d}" fill="none" stroke="black" stroke-width="9" marker-end="url(#def.arrow)"/>"#);
            let inner = format!(r#"<path d="{d}" fill="none" stroke="white" stroke-width="6"/>"#);
            self.line(&outer);
            self.line(&inner);
        } else {
            let p = format!(r#"<path d="{d}" fill="none" {style}/>"#);
            self.line(&p);
        }
        let (mx, my) = path.midpoint();
        let mut y = my - 8.0;
        let mut tags = Vec::new();
        if let Some(l) = e.label() {
            tags.push(("edge-label", l.to_string()));
        }
        if let Some(r) = e.role() {
            tags.push(("role", r.keyword().to_string()));
        }
        if let Some(a) = e.attribute() {
            tags.push(("attribute", a.to_string()));
        }
        if let Some(m) = e.moves() {
            let name = self.d.element(m.as_str()).and_then(|x| x.label()).unwrap_or(m.as_str()).to_string();
            tags.push(("moves", format!("[{name}]")));
        }
        for (class, t) in tags {
            self.text(mx, y, class, "middle", &t);
            y -= 14.0;
        }
        self.bindings_at(id.as_str(), mx + 6.0, my + 16.0);
        self.line("</g>");
    }

    fn group(&mut self, id: &Id, g: &Group) {
        let open = format!(r#"<g id="{id}" class="group {}">"#, kind_class_group(g));
        self.line(&open);
        if let Group::StateDiagram(s) = g {
            let spot = s.marker.as_ref().and_then(|m| {
                self.lay.rects.get(m).map(|r| (r.cx(), r.y + 10.0)).or_else(|| self.lay.paths.get(m).map(|p| p.midpoint()))
            });
            if let Some((x, y)) = spot {
                let c = format!(r#"<circle class="marker" cx="{}" cy="{}" r="5" fill="black"/>"#, num(x), num(y));
                self.line(&c);
            }
        }
        self.line("</g>");
    }
}

fn kind_class_group(g: &Group) -> &'static str {
    match g {
        Group::StateDiagram(_) => "state-diagram",
        Group::SplitTime(_) => "split-time",
    }
}
