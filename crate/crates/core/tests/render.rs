use figsynth::color::{default_color_table, split_colors, ColorScheme, ColorTable, WHITE};
use figsynth::render::{compute_ticks, decode_png, render, BitmapFont, ElementClass, RenderOptions, RenderResult};
use figsynth::synth::{sample_figure_with, FigureSpec, FigureType, SynthConfig};

fn scheme(table: &ColorTable) -> ColorScheme {
    split_colors(table, 42).unwrap()
}

fn first_rendered(table: &ColorTable, ft: FigureType, id: u64, opts: &RenderOptions) -> (FigureSpec, RenderResult) {
    let s = scheme(table);
    for attempt in 0..16 {
        let spec = sample_figure_with(&SynthConfig::default(), ft, id, &s, 42, attempt).unwrap();
        if let Ok(r) = render(&spec, table, BitmapFont::embedded(), opts) {
            return (spec, r);
        }
    }
    panic!("figure {id} never rendered");
}

#[test]
fn ticks_match_hand_computed_values() {
    assert_eq!(compute_ticks(0.0, 10.0, 6).unwrap().values, vec![0.0, 2.0, 4.0, 6.0, 8.0, 10.0]);
    let flat = compute_ticks(5.0, 5.0, 6).unwrap();
    assert!(flat.lo() <= 4.0 && flat.hi() >= 6.0, "{:?}", flat.values);
    let tenths = compute_ticks(0.0, 1.0, 11).unwrap();
    let expected: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
    assert_eq!(tenths.values.len(), 11);
    for (got, want) in tenths.values.iter().zip(&expected) {
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }
    assert_eq!(tenths.labels()[3], "0.3");
    assert!(compute_ticks(f64::NAN, 1.0, 5).is_err());
    assert!(compute_ticks(2.0, 1.0, 5).is_err());
}

#[test]
fn ticks_cover_range_with_uniform_steps() {
    for (lo, hi) in [(0.3, 9.7), (-4.0, 13.0), (1e3, 1e4), (0.001, 0.009), (-50.0, -2.0)] {
        let t = compute_ticks(lo, hi, 8).unwrap();
        assert!(t.lo() <= lo && t.hi() >= hi, "{lo}..{hi}: {:?}", t.values);
        assert!((2..=8).contains(&t.values.len()));
        let step = t.step.value();
        for w in t.values.windows(2) {
            assert!(((w[1] - w[0]) - step).abs() <= 1e-9 * step.max(1.0));
        }
    }
}

#[test]
fn png_decodes_with_reference_decoder() {
    let table = default_color_table();
    let (_, r) = first_rendered(&table, FigureType::Pie, 5, &RenderOptions::default());
    let decoder = png::Decoder::new(std::io::Cursor::new(&r.png));
    let mut reader = decoder.read_info().unwrap();
    let mut buf = vec![0; reader.output_buffer_size().unwrap()];
    let info = reader.next_frame(&mut buf).unwrap();
    assert_eq!((info.width, info.height), (r.width, r.height));
    assert_eq!(info.color_type, png::ColorType::Rgb);
    assert_eq!(info.bit_depth, png::BitDepth::Eight);
    let ours = decode_png(&r.png).unwrap();
    assert_eq!(&buf[..info.buffer_size()], ours.pixels());
    // Corners are background.
    assert_eq!(ours.get(0, 0), WHITE);
}

#[test]
fn bars_are_solid_and_ordered_left_to_right() {
    let table = default_color_table();
    for id in 0..10 {
        let (spec, r) = first_rendered(&table, FigureType::VerticalBar, id, &RenderOptions::default());
        let canvas = decode_png(&r.png).unwrap();
        let bars: Vec<_> = r.boxes.iter().filter(|b| b.element_class == ElementClass::Bar).collect();
        assert_eq!(bars.len(), spec.series.len());
        for (b, s) in bars.iter().zip(&spec.series) {
            assert_eq!(b.color_id, Some(s.color_id));
        }
        for w in bars.windows(2) {
            assert!(w[0].x + w[0].w <= w[1].x, "bars overlap or are out of order");
        }
        // A bar is a filled rectangle: every pixel of its box carries its color,
        // unless something drawn later (the legend) sits on top.
        for b in &bars {
            let rgb = table.rgb(b.color_id.unwrap());
            let own = (b.y..b.y + b.h)
                .flat_map(|y| (b.x..b.x + b.w).map(move |x| (x, y)))
                .filter(|&(x, y)| canvas.get(x, y) == rgb)
                .count();
            assert!(own > 0);
            if matches!(r.legend, figsynth::render::Placement::Outside { .. }) {
                assert_eq!(own as u32, b.w * b.h, "bar box not tight on figure {id}");
            }
        }
    }
}

#[test]
fn taller_bars_have_taller_boxes() {
    let table = default_color_table();
    let (spec, r) = first_rendered(&table, FigureType::VerticalBar, 17, &RenderOptions::default());
    let bars: Vec<_> = r.boxes.iter().filter(|b| b.element_class == ElementClass::Bar).collect();
    for i in 0..bars.len() {
        for j in 0..bars.len() {
            if spec.series[i].y_values[0] > spec.series[j].y_values[0] + 1e-6 * spec.magnitude * 10.0 {
                assert!(bars[i].h >= bars[j].h);
            }
        }
    }
}

#[test]
fn base_height_sets_canvas_height() {
    let table = default_color_table();
    for h in [128, 256, 400] {
        let opts = RenderOptions {
            base_height: h,
            per_segment_boxes: false,
        };
        let (spec, r) = first_rendered(&table, FigureType::Line, 3, &opts);
        assert_eq!(r.height, h);
        let expected = (f64::from(h) * spec.style.width_to_height).round() as u32;
        assert!(r.width.abs_diff(expected) <= 1, "{} vs {expected}", r.width);
    }
}

#[test]
fn segment_boxes_nest_inside_their_curve() {
    let table = default_color_table();
    let opts = RenderOptions {
        base_height: 256,
        per_segment_boxes: true,
    };
    let (_, r) = first_rendered(&table, FigureType::Line, 8, &opts);
    let groups: Vec<_> = r.boxes.iter().filter(|b| b.element_class == ElementClass::LineSegmentGroup).collect();
    let segments: Vec<_> = r.boxes.iter().filter(|b| b.element_class == ElementClass::LineSegment).collect();
    assert!(!segments.is_empty());
    for s in segments {
        let g = groups.iter().find(|g| g.color_id == s.color_id).expect("parent curve");
        assert!(s.x >= g.x && s.y >= g.y && s.x + s.w <= g.x + g.w && s.y + s.h <= g.y + g.h);
    }
}

#[test]
fn rendering_is_deterministic() {
    let table = default_color_table();
    let (_, a) = first_rendered(&table, FigureType::DotLine, 21, &RenderOptions::default());
    let (_, b) = first_rendered(&table, FigureType::DotLine, 21, &RenderOptions::default());
    assert_eq!(a.png, b.png);
    assert_eq!(a.boxes, b.boxes);
}
