//! Geometry: where each element, edge and time axis goes.
//!
//! Explicit positions are honoured. A child's position is relative to the
//! top-left corner of its parent; top-level positions are absolute.
//! Everything else is laid out in columns by edge topology, left to right,
//! with time axes down the left-hand side.

use std::collections::{BTreeMap, BTreeSet};

use crate::model::{Diagram, EdgeKind, ElementKind, Group, Id, Payload};

pub(crate) const PAD: f64 = 16.0;
const GAP_X: f64 = 90.0;
const GAP_Y: f64 = 50.0;
const LINE: f64 = 15.0;
const AXIS_GAP: f64 = 60.0;
const MIN_AXIS: f64 = 240.0;
const LOOSE_LEN: f64 = 70.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Rect {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl Rect {
    pub fn new(x: f64, y: f64, w: f64, h: f64) -> Self {
        Rect { x, y, w, h }
    }

    pub fn cx(&self) -> f64 {
        self.x + self.w / 2.0
    }

    pub fn cy(&self) -> f64 {
        self.y + self.h / 2.0
    }

    pub fn right(&self) -> f64 {
        self.x + self.w
    }

    pub fn bottom(&self) -> f64 {
        self.y + self.h
    }

    pub fn union(&self, o: &Rect) -> Rect {
        let (x, y) = (self.x.min(o.x), self.y.min(o.y));
        Rect::new(x, y, self.right().max(o.right()) - x, self.bottom().max(o.bottom()) - y)
    }
}

/// Outline used to clip edge ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Outline {
    Ellipse,
    Box,
}

pub(crate) fn outline(kind: ElementKind) -> Outline {
    use ElementKind::*;
    match kind {
        PhysicalObjectCircle | DataObjectCircle | CAObjectCircle | StateCircle | DataPoint | Marker0D | AttendRing => {
            Outline::Ellipse
        }
        _ => Outline::Box,
    }
}

/// Point on the outline of `r` in the direction of `(px, py)`.
pub(crate) fn boundary(r: &Rect, o: Outline, px: f64, py: f64) -> (f64, f64) {
    let (cx, cy) = (r.cx(), r.cy());
    let (dx, dy) = (px - cx, py - cy);
    if dx == 0.0 && dy == 0.0 {
        return (cx, cy);
    }
    let (a, b) = (r.w / 2.0, r.h / 2.0);
    let s = match o {
        Outline::Ellipse if a > 0.0 && b > 0.0 => 1.0 / ((dx / a).powi(2) + (dy / b).powi(2)).sqrt(),
        _ => {
            let sx = if dx != 0.0 { a / dx.abs() } else { f64::INFINITY };
            let sy = if dy != 0.0 { b / dy.abs() } else { f64::INFINITY };
            sx.min(sy)
        }
    };
    (cx + dx * s, cy + dy * s)
}

/// A Time edge drawn vertically; `t` maps linearly onto `y0..y1`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Axis {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
    pub tmin: f64,
    pub tmax: f64,
    /// Whether to draw the "0" tick; branches of a split share their trunk's.
    pub now_tick: bool,
}

impl Axis {
    /// Point for time `t`, clamped to the drawn segment.
    pub fn at(&self, t: f64) -> (f64, f64) {
        let span = self.tmax - self.tmin;
        let f = if span > 0.0 { ((t - self.tmin) / span).clamp(0.0, 1.0) } else { 0.5 };
        (self.x0 + (self.x1 - self.x0) * f, self.y0 + (self.y1 - self.y0) * f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum EdgePath {
    Line { x1: f64, y1: f64, x2: f64, y2: f64 },
    Loop { x1: f64, y1: f64, x2: f64, y2: f64, lift: f64 },
}

impl EdgePath {
    pub fn midpoint(&self) -> (f64, f64) {
        match *self {
            EdgePath::Line { x1, y1, x2, y2 } => ((x1 + x2) / 2.0, (y1 + y2) / 2.0),
            EdgePath::Loop { x1, y1, x2, y2, lift } => ((x1 + x2) / 2.0, (y1 + y2) / 2.0 - lift * 0.75),
        }
    }
}

#[derive(Debug, Default)]
pub(crate) struct Layout {
    pub rects: BTreeMap<Id, Rect>,
    pub axes: BTreeMap<Id, Axis>,
    pub paths: BTreeMap<Id, EdgePath>,
    /// Split junctions sit on their trunk rather than in the flow.
    pub junctions: BTreeMap<Id, Rect>,
    pub bounds: Option<Rect>,
}

impl Layout {
    fn grow(&mut self, r: Rect) {
        self.bounds = Some(self.bounds.map_or(r, |b| b.union(&r)));
    }
}

/// Whether `id` is drawn by its owner rather than placed on its own.
pub(crate) fn rides_on_something(d: &Diagram, id: &Id) -> bool {
    let Some(e) = d.element(id.as_str()) else { return false };
    match e.payload() {
        Payload::TimeAnchor(a) => a.axis.as_ref().is_some_and(|ax| is_time(d, ax)),
        Payload::AttendRing { on: Some(on) } => d.edge(on.as_str()).is_some(),
        _ => false,
    }
}

fn is_time(d: &Diagram, id: &Id) -> bool {
    d.edge(id.as_str()).is_some_and(|e| e.kind() == EdgeKind::Time)
}

pub(crate) fn binding_lines(d: &Diagram, owner: &str) -> usize {
    d.bindings_of(owner).count()
}

fn natural(d: &Diagram, id: &Id, font: f64) -> (f64, f64) {
    use ElementKind::*;
    let e = &d.elements()[id];
    let text_w = |s: &str| s.chars().count() as f64 * font * 0.6 + 12.0;
    let label_w = e.label().map_or(0.0, text_w);
    match e.kind() {
        PhysicalObjectCircle | DataObjectCircle | CAObjectCircle | StateCircle => {
            let s = label_w.clamp(64.0, 140.0);
            (s, s)
        }
        DataPoint | Marker0D => (12.0, 12.0),
        Cell => (32.0, 32.0),
        SensorBar => (90.0f64.max(label_w), 18.0),
        Marker1D => (48.0, 48.0),
        Marker2D => (90.0f64.max(label_w), 60.0),
        ValueBar => (140.0, 22.0),
        SwirlyArray | ModalVerbIcon => (110.0, 110.0),
        CorrelationBox => {
            let lines = match e.payload() {
                Payload::Correlation(c) => c.equations().iter().map(|q| text_w(&q.to_string())).collect::<Vec<_>>(),
                _ => Vec::new(),
            };
            let w = lines.iter().copied().fold(120.0f64.max(label_w), f64::max);
            (w, 30.0 + LINE * lines.len() as f64)
        }
        TimeAnchor => (label_w.max(50.0), 20.0),
        LabelString => (label_w.max(20.0), 20.0),
        AttendRing => (34.0, 34.0),
        MotivationTriangle => (80.0, 70.0),
        RobinsonIcon => (80.0, 80.0),
        VerbatimBox | DescriptiveBox | AggregationBox | CAAggregationBox | XorBox | DataSetBox | ZoomBoxPair => {
            (100.0, 70.0)
        }
    }
}

struct Builder<'a> {
    d: &'a Diagram,
    font: f64,
    sizes: BTreeMap<Id, (f64, f64)>,
    /// Appendages drawn on the border of a sibling body.
    riders: BTreeSet<Id>,
    out: Layout,
}

impl<'a> Builder<'a> {
    fn children(&self, id: &Id) -> Vec<Id> {
        self.d.children(id.as_str()).filter(|c| self.placed(c)).cloned().collect()
    }

    fn placed(&self, id: &Id) -> bool {
        !rides_on_something(self.d, id) && !self.riders.contains(id) && !self.out.junctions.contains_key(id)
    }

    fn slot_h(&self, id: &Id, h: f64) -> f64 {
        h + LINE * binding_lines(self.d, id.as_str()) as f64
    }

    /// Size of an element, growing containers around their contents.
    fn size(&mut self, id: &Id) -> (f64, f64) {
        if let Some(s) = self.sizes.get(id) {
            return *s;
        }
        let e = &self.d.elements()[id];
        let (mut w, mut h) = natural(self.d, id, self.font);
        if let Some(p) = e.position() {
            (w, h) = (p.w, p.h);
        } else if e.kind().is_container() {
            let kids = self.children(id);
            let (mut pw, mut ph) = (0.0f64, 0.0f64);
            let mut loose = Vec::new();
            for c in kids {
                match self.d.elements()[&c].position() {
                    Some(p) => {
                        pw = pw.max(p.x + p.w);
                        ph = ph.max(p.y + p.h);
                    }
                    None => loose.push(c),
                }
            }
            let (gw, gh) = self.grid_extent(&loose);
            w = w.max(pw.max(gw) + 2.0 * PAD);
            h = h.max(ph + gh + 2.0 * PAD + LINE);
        }
        self.sizes.insert(id.clone(), (w, h));
        (w, h)
    }

    fn grid_extent(&mut self, items: &[Id]) -> (f64, f64) {
        let (mut w, mut h, mut row_w, mut row_h) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for (i, c) in items.iter().enumerate() {
            if i > 0 && i % 4 == 0 {
                w = w.max(row_w);
                h += row_h + PAD;
                (row_w, row_h) = (0.0, 0.0);
            }
            let (cw, ch) = self.size(c);
            row_w += cw + if i % 4 == 0 { 0.0 } else { PAD };
            row_h = row_h.max(self.slot_h(c, ch));
        }
        (w.max(row_w), h + row_h)
    }

    fn place(&mut self, id: &Id, x: f64, y: f64) {
        let (w, h) = self.size(id);
        let r = Rect::new(x, y, w, h);
        self.out.rects.insert(id.clone(), r);
        self.out.grow(Rect::new(x, y, w, self.slot_h(id, h)));
        let kids = self.children(id);
        let mut loose = Vec::new();
        let mut ph = 0.0f64;
        for c in kids {
            match self.d.elements()[&c].position() {
                Some(p) => {
                    ph = ph.max(p.y + p.h);
                    self.place(&c, x + p.x, y + p.y);
                }
                None => loose.push(c),
            }
        }
        let (mut cx, mut cy, mut row_h) = (x + PAD, y + PAD + LINE + ph, 0.0f64);
        for (i, c) in loose.iter().enumerate() {
            if i > 0 && i % 4 == 0 {
                cx = x + PAD;
                cy += row_h + PAD;
                row_h = 0.0;
            }
            let (cw, ch) = self.size(c);
            self.place(c, cx, cy);
            cx += cw + PAD;
            row_h = row_h.max(self.slot_h(c, ch));
        }
    }

    fn top(&self, id: &Id) -> Id {
        let mut cur = id.clone();
        while let Some(p) = self.d.parent(cur.as_str()) {
            cur = p.clone();
        }
        cur
    }
}

pub(crate) fn layout(d: &Diagram, font: f64) -> Layout {
    let mut b = Builder { d, font, sizes: BTreeMap::new(), riders: BTreeSet::new(), out: Layout::default() };
    for g in d.groups().values() {
        if let Group::SplitTime(s) = g {
            if d.element(s.junction().as_str()).is_some() {
                b.out.junctions.insert(s.junction().clone(), Rect::new(0.0, 0.0, 36.0, 20.0));
            }
        }
    }
    for (id, e) in d.elements() {
        let Some(host) = e.object().and_then(|o| o.appendage_of.as_ref()) else { continue };
        if e.position().is_none() && host != id && d.element(host.as_str()).is_some() && d.parent(id.as_str()) == d.parent(host.as_str()) {
            b.riders.insert(id.clone());
        }
    }

    let roots: Vec<Id> = d.elements().keys().filter(|i| d.parent(i.as_str()).is_none() && b.placed(i)).cloned().collect();
    for id in roots.iter().filter(|i| d.elements()[*i].position().is_some()) {
        let p = *d.elements()[id].position().expect("filtered");
        b.place(id, p.x, p.y);
    }
    let flow: Vec<Id> = roots.iter().filter(|i| d.elements()[*i].position().is_none()).cloned().collect();
    let columns = columns(&b, &flow);
    let mut x = b.out.bounds.map_or(0.0, |r| r.right() + GAP_X);
    let y0 = b.out.bounds.map_or(0.0, |r| r.y);
    for col in columns {
        let mut y = y0;
        let mut col_w = 0.0f64;
        for id in col {
            let (w, h) = b.size(&id);
            b.place(&id, x, y);
            y += b.slot_h(&id, h) + GAP_Y;
            col_w = col_w.max(w);
        }
        x += col_w + GAP_X;
    }

    place_riders(&mut b);
    place_edges(&mut b);
    place_axes(&mut b);
    b.out
}

/// Columns by longest path over edges between top-level ancestors.
fn columns(b: &Builder<'_>, flow: &[Id]) -> Vec<Vec<Id>> {
    let member: BTreeSet<&Id> = flow.iter().collect();
    let mut links = BTreeSet::new();
    for e in b.d.edges().values() {
        if let (Some(s), Some(t)) = (e.source(), e.target()) {
            let (s, t) = (b.top(s), b.top(t));
            if s != t && member.contains(&s) && member.contains(&t) {
                links.insert((s, t));
            }
        }
    }
    let mut layer: BTreeMap<&Id, usize> = flow.iter().map(|i| (i, 0)).collect();
    for _ in 0..flow.len() {
        let mut changed = false;
        for (s, t) in &links {
            let want = (layer[s] + 1).min(flow.len());
            if layer[t] < want {
                layer.insert(t, want);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut cols: BTreeMap<usize, Vec<Id>> = BTreeMap::new();
    for (id, l) in layer {
        cols.entry(l).or_default().push(id.clone());
    }
    cols.into_values().collect()
}

fn place_riders(b: &mut Builder<'_>) {
    let mut pending: Vec<Id> = b.riders.iter().cloned().collect();
    let mut slot: BTreeMap<Id, usize> = BTreeMap::new();
    while !pending.is_empty() {
        let before = pending.len();
        pending.retain(|id| {
            let e = &b.d.elements()[id];
            let o = e.object().expect("riders are objects");
            let host = o.appendage_of.as_ref().expect("riders have hosts");
            let Some(hr) = b.out.rects.get(host).copied() else { return true };
            let n = slot.entry(host.clone()).or_insert(0);
            let angle = [0.0f64, -0.7, 0.7, -1.4, 1.4][*n % 5];
            *n += 1;
            let s = 26.0;
            let (rx, ry) = (hr.w / 2.0, hr.h / 2.0);
            let inward = if o.appendage == Some(crate::model::AppendageKind::Internal) { s / 2.0 + 2.0 } else { 0.0 };
            let cx = hr.cx() + (rx - inward) * angle.cos();
            let cy = hr.cy() + (ry - inward) * angle.sin();
            let r = Rect::new(cx - s / 2.0, cy - s / 2.0, s, s);
            b.out.rects.insert(id.clone(), r);
            let lines = binding_lines(b.d, id.as_str()) as f64;
            b.out.grow(Rect::new(r.x, r.y, r.w, r.h + LINE * lines));
            false
        });
        if pending.len() == before {
            // Hosts that are themselves unplaced; park the rest beside the content.
            let x = b.out.bounds.map_or(0.0, |r| r.right() + GAP_X);
            for (i, id) in pending.drain(..).enumerate() {
                let r = Rect::new(x, i as f64 * 40.0, 26.0, 26.0);
                b.out.rects.insert(id, r);
                b.out.grow(r);
            }
        }
    }
}

fn place_edges(b: &mut Builder<'_>) {
    let d = b.d;
    let mut spare_y = b.out.bounds.map_or(0.0, |r| r.bottom() + GAP_Y);
    let spare_x = b.out.bounds.map_or(0.0, |r| r.x);
    for (id, e) in d.edges() {
        if e.kind() == EdgeKind::Time {
            continue;
        }
        let end = |i: &Id| {
            let r = *b.out.rects.get(i)?;
            Some((r, outline(d.elements()[i].kind())))
        };
        let path = match (e.source().and_then(end), e.target().and_then(end)) {
            (Some((rs, os)), Some((rt, ot))) if e.source() == e.target() => {
                let _ = (rt, ot);
                let (x1, y1) = boundary(&rs, os, rs.cx() + rs.w * 0.3, rs.y - 1.0);
                let (x2, y2) = boundary(&rs, os, rs.cx() - rs.w * 0.3, rs.y - 1.0);
                EdgePath::Loop { x1, y1, x2, y2, lift: rs.h * 0.6 + 10.0 }
            }
            (Some((rs, os)), Some((rt, ot))) => {
                let (x1, y1) = boundary(&rs, os, rt.cx(), rt.cy());
                let (x2, y2) = boundary(&rt, ot, rs.cx(), rs.cy());
                EdgePath::Line { x1, y1, x2, y2 }
            }
            (Some((rs, os)), None) => {
                let (x1, y1) = boundary(&rs, os, rs.right() + 1.0, rs.cy());
                EdgePath::Line { x1, y1, x2: x1 + LOOSE_LEN, y2: y1 }
            }
            (None, Some((rt, ot))) => {
                let (x2, y2) = boundary(&rt, ot, rt.x - 1.0, rt.cy());
                EdgePath::Line { x1: x2 - LOOSE_LEN, y1: y2, x2, y2 }
            }
            (None, None) => {
                let p = EdgePath::Line { x1: spare_x, y1: spare_y, x2: spare_x + LOOSE_LEN * 1.5, y2: spare_y };
                spare_y += GAP_Y;
                p
            }
        };
        let (x1, y1, x2, y2) = match path {
            EdgePath::Line { x1, y1, x2, y2 } => (x1, y1, x2, y2),
            EdgePath::Loop { x1, y1, x2, y2, lift } => (x1, y1 - lift, x2, y2),
        };
        let lines = 1.0 + binding_lines(d, id.as_str()) as f64;
        b.out.grow(Rect::new(x1.min(x2), y1.min(y2) - 6.0, (x2 - x1).abs(), (y2 - y1).abs() + 12.0 + LINE * lines));
        b.out.paths.insert(id.clone(), path);
    }
}

fn anchors_on<'d>(d: &'d Diagram, axis: &'d Id) -> impl Iterator<Item = f64> + 'd {
    let axis = axis.clone();
    d.elements().values().filter_map(move |e| match e.payload() {
        Payload::TimeAnchor(a) if a.axis.as_ref() == Some(&axis) => Some(a.t),
        _ => None,
    })
}

fn range<I: Iterator<Item = f64>>(ts: I) -> (f64, f64) {
    let (lo, hi) = ts.fold((0.0f64, 0.0f64), |(lo, hi), t| (lo.min(t), hi.max(t)));
    (lo - 1.0, hi + 1.0)
}

fn place_axes(b: &mut Builder<'_>) {
    let d = b.d;
    let content = b.out.bounds.unwrap_or(Rect::new(0.0, 0.0, 0.0, 0.0));
    let (y0, y1) = (content.y, content.y + content.h.max(MIN_AXIS));
    let mut x = content.x - AXIS_GAP;
    let mut done = BTreeSet::new();
    for g in d.groups().values() {
        let Group::SplitTime(s) = g else { continue };
        if !is_time(d, s.trunk()) || done.contains(s.trunk()) {
            continue;
        }
        let branches: Vec<&Id> = s.branches().iter().filter(|br| is_time(d, br) && !done.contains(*br)).collect();
        let trunk_ts: Vec<f64> = anchors_on(d, s.trunk()).collect();
        let all = trunk_ts.iter().copied().chain(branches.iter().flat_map(|br| anchors_on(d, br)));
        let (tmin, tmax) = range(all);
        let scale = |t: f64| y0 + (y1 - y0) * (t - tmin) / (tmax - tmin);
        let split_t = trunk_ts.iter().copied().fold(0.0f64, f64::max);
        let ys = (scale(split_t) + 20.0).min(y1 - 60.0);
        let trunk = Axis { x0: x, y0, x1: x, y1: ys, tmin, tmax: tmin + (tmax - tmin) * (ys - y0) / (y1 - y0), now_tick: true };
        b.out.axes.insert(s.trunk().clone(), trunk);
        done.insert(s.trunk().clone());
        let jy = ys;
        if b.out.junctions.contains_key(s.junction()) {
            b.out.junctions.insert(s.junction().clone(), Rect::new(x - 18.0, jy, 36.0, 20.0));
        }
        let n = branches.len();
        for (i, br) in branches.into_iter().enumerate() {
            let spread = if n > 1 { -30.0 + 60.0 * i as f64 / (n - 1) as f64 } else { 0.0 };
            let ax = Axis {
                x0: x,
                y0: jy + 20.0,
                x1: x + spread,
                y1,
                tmin: tmin + (tmax - tmin) * (jy + 20.0 - y0) / (y1 - y0),
                tmax,
                now_tick: false,
            };
            b.out.axes.insert(br.clone(), ax);
            done.insert(br.clone());
        }
        b.out.grow(Rect::new(x - 80.0, y0, 120.0, y1 - y0 + 10.0));
        x -= AXIS_GAP + 40.0;
    }
    for (id, e) in d.edges() {
        if e.kind() != EdgeKind::Time || done.contains(id) {
            continue;
        }
        let (tmin, tmax) = range(anchors_on(d, id));
        b.out.axes.insert(id.clone(), Axis { x0: x, y0, x1: x, y1, tmin, tmax, now_tick: true });
        b.out.grow(Rect::new(x - 80.0, y0, 100.0, y1 - y0 + 10.0));
        x -= AXIS_GAP + 40.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_points() {
        let r = Rect::new(0.0, 0.0, 20.0, 10.0);
        assert_eq!(boundary(&r, Outline::Box, 100.0, 5.0), (20.0, 5.0));
        assert_eq!(boundary(&r, Outline::Ellipse, 10.0, -50.0), (10.0, 0.0));
        let (x, y) = boundary(&Rect::new(0.0, 0.0, 10.0, 10.0), Outline::Ellipse, 10.0, 10.0);
        assert!(((x - 5.0).powi(2) + (y - 5.0).powi(2) - 25.0).abs() < 1e-9);
    }

    #[test]
    fn axis_maps_time_downward() {
        let a = Axis { x0: 0.0, y0: 0.0, x1: 0.0, y1: 100.0, tmin: -1.0, tmax: 1.0, now_tick: true };
        assert_eq!(a.at(0.0), (0.0, 50.0));
        assert!(a.at(-0.5).1 < a.at(0.5).1);
        assert_eq!(a.at(9.0), (0.0, 100.0));
    }
}
