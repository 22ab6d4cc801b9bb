//! Vector-document parsing: extracts closed shapes whose bounding boxes
//! look like workspaces.
//!
//! Supported elements are `rect`, `polygon`, `polyline` and `path`;
//! `g` transforms are limited to `translate`. A polyline counts as
//! closed when its last point returns to its first; every closed path
//! subpath is an independent candidate. Curve commands contribute their
//! control points to the bounding box (the control polygon encloses the
//! curve).

use super::{Floorplan, IngestError, SizeFilter, Source, Units, Workspace};
use crate::geometry::{BoundingBox, Point, ScaleTransform};

/// Parses an SVG document and returns one workspace per closed shape
/// whose rescaled bounding box passes `filter`.
///
/// Ids are `ws-{k}` with `k` counting accepted shapes in document
/// order. The original document is retained as the floorplan background.
pub fn parse_vector(
    doc: &str,
    filter: &SizeFilter,
    transform: &ScaleTransform,
) -> Result<Floorplan, IngestError> {
    let tree = roxmltree::Document::parse(doc).map_err(|e| IngestError::Parse(e.to_string()))?;

    let mut candidates = Vec::new();
    collect_shapes(tree.root_element(), (0.0, 0.0), &mut candidates)?;

    let mut workspaces = Vec::new();
    for bbox in candidates {
        let scaled = transform.apply_box(bbox);
        if filter.accepts(&scaled) {
            let id = format!("ws-{}", workspaces.len());
            workspaces.push(Workspace::new(id, scaled, None));
        }
    }

    let mut fp = Floorplan::new(workspaces, Units::Inches, Source::Vector)?;
    fp.background = Some(doc.to_string());
    Ok(fp)
}

/// Walks the element tree in document order, accumulating translate
/// offsets and collecting closed-shape bounding boxes.
fn collect_shapes(
    node: roxmltree::Node,
    offset: (f64, f64),
    out: &mut Vec<BoundingBox>,
) -> Result<(), IngestError> {
    let offset = match node.attribute("transform") {
        Some(t) => {
            let (dx, dy) = parse_translate(t)?;
            (offset.0 + dx, offset.1 + dy)
        }
        None => offset,
    };

    match node.tag_name().name() {
        "rect" => {
            let x = float_attr(node, "x")?.unwrap_or(0.0);
            let y = float_attr(node, "y")?.unwrap_or(0.0);
            let w = float_attr(node, "width")?
                .ok_or_else(|| IngestError::Parse("rect missing width".into()))?;
            let h = float_attr(node, "height")?
                .ok_or_else(|| IngestError::Parse("rect missing height".into()))?;
            if w < 0.0 || h < 0.0 {
                return Err(IngestError::Parse("rect with negative size".into()));
            }
            out.push(BoundingBox::from_corners(
                point(x + offset.0, y + offset.1)?,
                point(x + w + offset.0, y + h + offset.1)?,
            ));
        }
        "polygon" => {
            let pts = points_attr(node, offset)?;
            if let Some(bbox) = BoundingBox::enclosing(&pts) {
                out.push(bbox);
            }
        }
        "polyline" => {
            let pts = points_attr(node, offset)?;
            // Closed only when the polyline returns to its start.
            if pts.len() >= 4 && is_close(pts[0], pts[pts.len() - 1]) {
                if let Some(bbox) = BoundingBox::enclosing(&pts) {
                    out.push(bbox);
                }
            }
        }
        "path" => {
            let d = node
                .attribute("d")
                .ok_or_else(|| IngestError::Parse("path missing d attribute".into()))?;
            for subpath in parse_path_data(d)? {
                if subpath.closed && subpath.points.len() >= 3 {
                    let shifted: Vec<Point> = subpath
                        .points
                        .iter()
                        .map(|p| point(p.x + offset.0, p.y + offset.1))
                        .collect::<Result<_, _>>()?;
                    if let Some(bbox) = BoundingBox::enclosing(&shifted) {
                        out.push(bbox);
                    }
                }
            }
        }
        _ => {}
    }

    for child in node.children().filter(|c| c.is_element()) {
        collect_shapes(child, offset, out)?;
    }
    Ok(())
}

fn point(x: f64, y: f64) -> Result<Point, IngestError> {
    Point::new(x, y).map_err(IngestError::from)
}

fn is_close(a: Point, b: Point) -> bool {
    (a.x - b.x).abs() < 1e-9 && (a.y - b.y).abs() < 1e-9
}

fn float_attr(node: roxmltree::Node, name: &str) -> Result<Option<f64>, IngestError> {
    match node.attribute(name) {
        None => Ok(None),
        Some(v) => v
            .trim()
            .parse::<f64>()
            .map(Some)
            .map_err(|_| IngestError::Parse(format!("bad numeric attribute {name}={v:?}"))),
    }
}

fn points_attr(node: roxmltree::Node, offset: (f64, f64)) -> Result<Vec<Point>, IngestError> {
    let raw = node
        .attribute("points")
        .ok_or_else(|| IngestError::Parse("shape missing points attribute".into()))?;
    let nums = lex_numbers(raw)?;
    if nums.len() % 2 != 0 {
        return Err(IngestError::Parse("odd number of point coordinates".into()));
    }
    nums.chunks(2)
        .map(|c| point(c[0] + offset.0, c[1] + offset.1))
        .collect()
}

/// Parses `translate(x [y])`; any other transform is out of contract.
fn parse_translate(text: &str) -> Result<(f64, f64), IngestError> {
    let t = text.trim();
    let inner = t
        .strip_prefix("translate(")
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(|| IngestError::Parse(format!("unsupported transform {t:?}")))?;
    let nums = lex_numbers(inner)?;
    match nums.as_slice() {
        [dx] => Ok((*dx, 0.0)),
        [dx, dy] => Ok((*dx, *dy)),
        _ => Err(IngestError::Parse(format!("bad translate arguments {t:?}"))),
    }
}

#[derive(Debug)]
pub(crate) struct Subpath {
    pub points: Vec<Point>,
    pub closed: bool,
}

/// Parses SVG path data into subpaths of control-polygon points.
///
/// A subpath is closed by an explicit `Z`/`z` or by ending on its start
/// point. Arc commands contribute endpoints only.
pub(crate) fn parse_path_data(d: &str) -> Result<Vec<Subpath>, IngestError> {
    let mut lexer = PathLexer::new(d);
    let mut subpaths: Vec<Subpath> = Vec::new();
    let mut current: Vec<Point> = Vec::new();
    let mut closed = false;
    let mut pos = (0.0, 0.0);
    let mut start = (0.0, 0.0);
    let mut cmd = None;

    macro_rules! push {
        ($x:expr, $y:expr) => {
            current.push(point($x, $y)?)
        };
    }

    while let Some(token) = lexer.next_command_or_number()? {
        let c = match token {
            Token::Command(c) => {
                cmd = Some(c);
                c
            }
            // A bare number repeats the previous command; an M/m repeat
            // is an implicit LineTo.
            Token::Number(_) => {
                lexer.push_back(token);
                match cmd {
                    Some('M') => 'L',
                    Some('m') => 'l',
                    Some(c) => c,
                    None => return Err(IngestError::Parse("path data starts with number".into())),
                }
            }
        };

        match c {
            'M' | 'm' => {
                let (x, y) = lexer.pair()?;
                if !current.is_empty() {
                    finish_subpath(&mut subpaths, &mut current, &mut closed);
                }
                pos = if c == 'm' {
                    (pos.0 + x, pos.1 + y)
                } else {
                    (x, y)
                };
                start = pos;
                push!(pos.0, pos.1);
            }
            'L' | 'l' => {
                let (x, y) = lexer.pair()?;
                pos = if c == 'l' {
                    (pos.0 + x, pos.1 + y)
                } else {
                    (x, y)
                };
                push!(pos.0, pos.1);
            }
            'H' | 'h' => {
                let x = lexer.number()?;
                pos.0 = if c == 'h' { pos.0 + x } else { x };
                push!(pos.0, pos.1);
            }
            'V' | 'v' => {
                let y = lexer.number()?;
                pos.1 = if c == 'v' { pos.1 + y } else { y };
                push!(pos.0, pos.1);
            }
            'C' | 'c' => {
                let (x1, y1) = lexer.pair()?;
                let (x2, y2) = lexer.pair()?;
                let (x, y) = lexer.pair()?;
                let rel = c == 'c';
                let base = pos;
                for &(px, py) in &[(x1, y1), (x2, y2)] {
                    let (ax, ay) = abs(rel, base, (px, py));
                    push!(ax, ay);
                }
                pos = abs(rel, base, (x, y));
                push!(pos.0, pos.1);
            }
            'S' | 's' | 'Q' | 'q' => {
                let (x1, y1) = lexer.pair()?;
                let (x, y) = lexer.pair()?;
                let rel = c.is_ascii_lowercase();
                let base = pos;
                let (ax, ay) = abs(rel, base, (x1, y1));
                push!(ax, ay);
                pos = abs(rel, base, (x, y));
                push!(pos.0, pos.1);
            }
            'T' | 't' => {
                let (x, y) = lexer.pair()?;
                pos = abs(c == 't', pos, (x, y));
                push!(pos.0, pos.1);
            }
            'A' | 'a' => {
                // rx ry x-rotation large-arc-flag sweep-flag x y
                lexer.number()?;
                lexer.number()?;
                lexer.number()?;
                lexer.flag()?;
                lexer.flag()?;
                let (x, y) = lexer.pair()?;
                pos = abs(c == 'a', pos, (x, y));
                push!(pos.0, pos.1);
            }
            'Z' | 'z' => {
                closed = true;
                pos = start;
                finish_subpath(&mut subpaths, &mut current, &mut closed);
            }
            other => {
                return Err(IngestError::Parse(format!("unknown path command {other:?}")));
            }
        }
    }

    if !current.is_empty() {
        finish_subpath(&mut subpaths, &mut current, &mut closed);
    }
    Ok(subpaths)
}

fn abs(relative: bool, base: (f64, f64), p: (f64, f64)) -> (f64, f64) {
    if relative {
        (base.0 + p.0, base.1 + p.1)
    } else {
        p
    }
}

fn finish_subpath(subpaths: &mut Vec<Subpath>, current: &mut Vec<Point>, closed: &mut bool) {
    let points = std::mem::take(current);
    if points.is_empty() {
        *closed = false;
        return;
    }
    let implicit = points.len() >= 3 && is_close(points[0], points[points.len() - 1]);
    subpaths.push(Subpath {
        closed: *closed || implicit,
        points,
    });
    *closed = false;
}

#[derive(Debug, Clone, Copy)]
enum Token {
    Command(char),
    Number(f64),
}

struct PathLexer<'a> {
    bytes: &'a [u8],
    pos: usize,
    pushed: Option<Token>,
}

impl<'a> PathLexer<'a> {
    fn new(d: &'a str) -> Self {
        Self {
            bytes: d.as_bytes(),
            pos: 0,
            pushed: None,
        }
    }

    fn push_back(&mut self, t: Token) {
        self.pushed = Some(t);
    }

    fn skip_separators(&mut self) {
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if b == b',' || b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn next_command_or_number(&mut self) -> Result<Option<Token>, IngestError> {
        if let Some(t) = self.pushed.take() {
            return Ok(Some(t));
        }
        self.skip_separators();
        if self.pos >= self.bytes.len() {
            return Ok(None);
        }
        let b = self.bytes[self.pos];
        if b.is_ascii_alphabetic() {
            self.pos += 1;
            Ok(Some(Token::Command(b as char)))
        } else {
            self.lex_float().map(|n| Some(Token::Number(n)))
        }
    }

    fn number(&mut self) -> Result<f64, IngestError> {
        if let Some(Token::Number(n)) = self.pushed {
            self.pushed = None;
            return Ok(n);
        }
        self.skip_separators();
        self.lex_float()
    }

    fn pair(&mut self) -> Result<(f64, f64), IngestError> {
        Ok((self.number()?, self.number()?))
    }

    /// Arc flags are single `0`/`1` characters and may be run together
    /// with the following number.
    fn flag(&mut self) -> Result<u8, IngestError> {
        self.skip_separators();
        match self.bytes.get(self.pos) {
            Some(b @ (b'0' | b'1')) => {
                self.pos += 1;
                Ok(b - b'0')
            }
            other => Err(IngestError::Parse(format!(
                "expected arc flag, found {other:?}"
            ))),
        }
    }

    /// Maximal-munch float: sign, digits, fraction, exponent. Handles
    /// SVG's packed forms like `1.5.5` (two numbers).
    fn lex_float(&mut self) -> Result<f64, IngestError> {
        let begin = self.pos;
        let n = self.bytes.len();
        let mut p = self.pos;
        if p < n && (self.bytes[p] == b'+' || self.bytes[p] == b'-') {
            p += 1;
        }
        let int_start = p;
        while p < n && self.bytes[p].is_ascii_digit() {
            p += 1;
        }
        let mut has_digits = p > int_start;
        if p < n && self.bytes[p] == b'.' {
            p += 1;
            let frac_start = p;
            while p < n && self.bytes[p].is_ascii_digit() {
                p += 1;
            }
            has_digits |= p > frac_start;
        }
        if !has_digits {
            return Err(IngestError::Parse(format!(
                "expected number at byte {begin} of path data"
            )));
        }
        if p < n && (self.bytes[p] == b'e' || self.bytes[p] == b'E') {
            let mut q = p + 1;
            if q < n && (self.bytes[q] == b'+' || self.bytes[q] == b'-') {
                q += 1;
            }
            let exp_start = q;
            while q < n && self.bytes[q].is_ascii_digit() {
                q += 1;
            }
            if q > exp_start {
                p = q;
            }
        }
        let text = std::str::from_utf8(&self.bytes[begin..p]).expect("ascii slice");
        self.pos = p;
        text.parse::<f64>()
            .map_err(|_| IngestError::Parse(format!("bad number {text:?} in path data")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn filter() -> SizeFilter {
        SizeFilter::new(20.0, 120.0).unwrap()
    }

    fn identity() -> ScaleTransform {
        ScaleTransform::identity()
    }

    #[test]
    fn single_rect_becomes_one_workspace() {
        let doc = r#"<svg xmlns="http://www.w3.org/2000/svg">
            <rect x="10" y="10" width="60" height="60"/>
        </svg>"#;
        let fp = parse_vector(doc, &filter(), &identity()).unwrap();
        assert_eq!(fp.len(), 1);
        assert_eq!(fp.workspaces[0].id, "ws-0");
        assert_eq!(fp.workspaces[0].centroid, Point::new(40.0, 40.0).unwrap());
    }

    #[test]
    fn room_outline_excluded_by_filter() {
        let doc = r#"<svg xmlns="http://www.w3.org/2000/svg">
            <rect x="0" y="0" width="600" height="600"/>
        </svg>"#;
        let err = parse_vector(doc, &filter(), &identity()).unwrap_err();
        assert!(matches!(err, IngestError::EmptyFloorplan));
    }

    #[test]
    fn open_paths_are_not_workspaces() {
        // One rect, one closed polyline, one open path: two workspaces.
        let doc = r#"<svg xmlns="http://www.w3.org/2000/svg">
            <rect x="0" y="0" width="60" height="60"/>
            <polyline points="100,0 160,0 160,60 100,60 100,0"/>
            <path d="M 300 0 L 360 0 L 360 60"/>
        </svg>"#;
        let fp = parse_vector(doc, &filter(), &identity()).unwrap();
        assert_eq!(fp.len(), 2);
        assert_eq!(fp.workspaces[0].id, "ws-0");
        assert_eq!(fp.workspaces[1].id, "ws-1");
        assert_eq!(
            fp.workspaces[1].centroid,
            Point::new(130.0, 30.0).unwrap()
        );
    }

    #[test]
    fn closed_path_with_z_is_a_workspace() {
        let doc = r#"<svg xmlns="http://www.w3.org/2000/svg">
            <path d="M0 0 h60 v60 h-60 Z"/>
        </svg>"#;
        let fp = parse_vector(doc, &filter(), &identity()).unwrap();
        assert_eq!(fp.len(), 1);
        assert_eq!(fp.workspaces[0].bbox.width(), 60.0);
    }

    #[test]
    fn path_subpaths_counted_independently() {
        // Two closed squares in one path element.
        let doc = r#"<svg xmlns="http://www.w3.org/2000/svg">
            <path d="M0 0 h60 v60 h-60 Z M200 0 h60 v60 h-60 Z"/>
        </svg>"#;
        let fp = parse_vector(doc, &filter(), &identity()).unwrap();
        assert_eq!(fp.len(), 2);
    }

    #[test]
    fn group_translate_offsets_children() {
        let doc = r#"<svg xmlns="http://www.w3.org/2000/svg">
            <g transform="translate(100, 50)">
                <rect x="0" y="0" width="60" height="60"/>
            </g>
        </svg>"#;
        let fp = parse_vector(doc, &filter(), &identity()).unwrap();
        assert_eq!(fp.workspaces[0].centroid, Point::new(130.0, 80.0).unwrap());
    }

    #[test]
    fn non_translate_transform_rejected() {
        let doc = r#"<svg xmlns="http://www.w3.org/2000/svg">
            <g transform="rotate(45)"><rect width="60" height="60"/></g>
        </svg>"#;
        assert!(matches!(
            parse_vector(doc, &filter(), &identity()),
            Err(IngestError::Parse(_))
        ));
    }

    #[test]
    fn malformed_document_is_a_parse_error() {
        assert!(matches!(
            parse_vector("<svg><rect", &filter(), &identity()),
            Err(IngestError::Parse(_))
        ));
    }

    #[test]
    fn rescale_applies_before_filter() {
        // 30px square at 2 units/px: passes the [20, 120] filter.
        let doc = r#"<svg xmlns="http://www.w3.org/2000/svg">
            <rect x="0" y="0" width="30" height="30"/>
        </svg>"#;
        let t = ScaleTransform::uniform(2.0).unwrap();
        let fp = parse_vector(doc, &filter(), &t).unwrap();
        assert_eq!(fp.workspaces[0].bbox.width(), 60.0);
        assert_eq!(fp.workspaces[0].centroid, Point::new(30.0, 30.0).unwrap());
    }

    #[test]
    fn curve_control_points_bound_the_shape() {
        // A closed curve whose control points stretch the bounding box.
        let d = "M0 0 C 20 40, 40 40, 60 0 Z";
        let subpaths = parse_path_data(d).unwrap();
        assert_eq!(subpaths.len(), 1);
        assert!(subpaths[0].closed);
        let bbox = BoundingBox::enclosing(&subpaths[0].points).unwrap();
        assert_eq!(bbox.max.y, 40.0);
        assert_eq!(bbox.max.x, 60.0);
    }

    #[test]
    fn packed_numbers_and_arc_flags_lex() {
        let subpaths = parse_path_data("M1.5.5L2.5 1e1A5 5 0 01 40 40Z").unwrap();
        assert_eq!(subpaths.len(), 1);
        let pts = &subpaths[0].points;
        assert_eq!(pts[0], Point::new(1.5, 0.5).unwrap());
        assert_eq!(pts[1], Point::new(2.5, 10.0).unwrap());
        assert_eq!(pts[2], Point::new(40.0, 40.0).unwrap());
    }

    #[test]
    fn implicit_lineto_after_moveto() {
        let subpaths = parse_path_data("M0 0 60 0 60 60 0 60 Z").unwrap();
        assert_eq!(subpaths.len(), 1);
        assert_eq!(subpaths[0].points.len(), 4);
        assert!(subpaths[0].closed);
    }
}
