//! C ABI over the figsynth library.
//!
//! Conventions:
//! * Every function returns an [`FsStatus`]; results come back through out
//!   pointers. On failure `fs_last_error_message` describes the error.
//! * Objects are opaque handles created by `fs_*_new`/`fs_*_sample`/... and
//!   released with the matching `fs_*_free`. Freeing NULL is a no-op.
//! * Strings returned through `char **` are owned by the caller and released
//!   with `fs_string_free`. Pointers into a handle (PNG bytes, question text)
//!   stay valid until that handle is freed.
//! * Panics never cross the boundary; they surface as `FS_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use figsynth::color::{default_color_table, split_colors, ColorId, ColorScheme, ColorTable, SchemeMode};
use figsynth::corpus::{generate_corpus, validate_corpus, CorpusConfig};
use figsynth::qa::{generate_qa, metrics, Answer};
use figsynth::render::{render, BitmapFont, ElementClass, RenderOptions, RenderResult};
use figsynth::synth::{sample_figure_with, FigureSpec, FigureType, Series, SynthConfig};
use figsynth::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Config = 3,
    Render = 4,
    Generation = 5,
    Io = 6,
    Format = 7,
    OutOfRange = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FsFigureType {
    VerticalBar = 0,
    HorizontalBar = 1,
    Line = 2,
    DotLine = 3,
    Pie = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FsSchemeMode {
    Training = 0,
    Alternated = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FsElementClass {
    Bar = 0,
    LineSegmentGroup = 1,
    LineSegment = 2,
    DotMarkerGroup = 3,
    PieSlice = 4,
    XAxis = 5,
    YAxis = 6,
    TickLabel = 7,
    AxisLabel = 8,
    Title = 9,
    LegendToken = 10,
    LegendLabel = 11,
    GridLine = 12,
}

/// Bounding box; `color_id` is -1 for elements without a series color.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FsBox {
    pub element_class: FsElementClass,
    pub color_id: i32,
    pub x: u32,
    pub y: u32,
    pub w: u32,
    pub h: u32,
}

/// Question-answer pair; `color_y` is -1 for single-subject templates.
/// `question` is NUL-terminated and owned by the list it came from.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct FsQa {
    pub figure_id: u64,
    pub template_id: u8,
    pub color_x: i32,
    pub color_y: i32,
    pub answer_yes: bool,
    pub question: *const c_char,
}

/// Color partition plus active mode.
pub struct FsScheme {
    scheme: ColorScheme,
}

/// Sampled figure source data.
pub struct FsFigure {
    spec: FigureSpec,
}

/// Rendered PNG and boxes.
pub struct FsRender {
    result: RenderResult,
}

pub struct FsQaList {
    pairs: Vec<FsQa>,
    _text: Vec<CString>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<Vec<u8>>) {
    let mut bytes = message.into();
    bytes.retain(|&b| b != 0);
    let c = CString::new(bytes).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: FsStatus, message: impl Into<Vec<u8>>) -> FsStatus {
    set_error(message);
    status
}

fn from_error(e: Error) -> FsStatus {
    let status = match &e {
        Error::Config(_) => FsStatus::Config,
        Error::InvalidInput(_) => FsStatus::InvalidInput,
        Error::Render(_) => FsStatus::Render,
        Error::Generation { .. } => FsStatus::Generation,
        Error::Io { .. } => FsStatus::Io,
        Error::Format { .. } => FsStatus::Format,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> FsStatus) -> FsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => {
            if status == FsStatus::Ok {
                set_error("");
            }
            status
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(FsStatus::Panic, format!("internal panic: {message}"))
        }
    }
}

fn table() -> &'static ColorTable {
    static TABLE: std::sync::OnceLock<ColorTable> = std::sync::OnceLock::new();
    TABLE.get_or_init(default_color_table)
}

fn parse_figure_type(raw: u32) -> Option<FigureType> {
    FigureType::ALL.get(raw as usize).copied()
}

fn element_class(class: ElementClass) -> FsElementClass {
    match class {
        ElementClass::Bar => FsElementClass::Bar,
        ElementClass::LineSegmentGroup => FsElementClass::LineSegmentGroup,
        ElementClass::LineSegment => FsElementClass::LineSegment,
        ElementClass::DotMarkerGroup => FsElementClass::DotMarkerGroup,
        ElementClass::PieSlice => FsElementClass::PieSlice,
        ElementClass::XAxis => FsElementClass::XAxis,
        ElementClass::YAxis => FsElementClass::YAxis,
        ElementClass::TickLabel => FsElementClass::TickLabel,
        ElementClass::AxisLabel => FsElementClass::AxisLabel,
        ElementClass::Title => FsElementClass::Title,
        ElementClass::LegendToken => FsElementClass::LegendToken,
        ElementClass::LegendLabel => FsElementClass::LegendLabel,
        ElementClass::GridLine => FsElementClass::GridLine,
    }
}

/// # Safety
/// `ptr` must be NULL or a valid NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, FsStatus> {
    if ptr.is_null() {
        return Err(fail(FsStatus::NullPointer, format!("{what} is NULL")));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(FsStatus::InvalidInput, format!("{what} is not UTF-8")))
}

fn give_string(s: String, out: *mut *mut c_char) -> FsStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: callers check `out` for NULL before producing the string.
            unsafe { *out = c.into_raw() };
            FsStatus::Ok
        }
        Err(_) => fail(FsStatus::Format, "string contains NUL"),
    }
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(FsStatus::NullPointer, concat!(stringify!($p), " is NULL"));
        })+
    };
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn fs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static NUL-terminated generator version.
#[no_mangle]
pub extern "C" fn fs_version() -> *const c_char {
    static VERSION: std::sync::OnceLock<CString> = std::sync::OnceLock::new();
    VERSION
        .get_or_init(|| CString::new(figsynth::GENERATOR_VERSION).expect("no NUL"))
        .as_ptr()
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn fs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Seeded color partition.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fs_scheme_new(master_seed: u64, mode: FsSchemeMode, out: *mut *mut FsScheme) -> FsStatus {
    guard(|| {
        non_null!(out);
        let mode = match mode as u32 {
            0 => SchemeMode::Training,
            1 => SchemeMode::Alternated,
            other => return fail(FsStatus::InvalidInput, format!("unknown scheme mode {other}")),
        };
        match split_colors(table(), master_seed) {
            Ok(s) => {
                *out = Box::into_raw(Box::new(FsScheme {
                    scheme: s.with_mode(mode),
                }));
                FsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `scheme` must be NULL or a handle from `fs_scheme_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fs_scheme_free(scheme: *mut FsScheme) {
    if !scheme.is_null() {
        drop(Box::from_raw(scheme));
    }
}

/// Samples figure source data. `figure_type` is an `FsFigureType` value;
/// `attempt` selects an independent redraw of the same id.
///
/// # Safety
/// `scheme` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fs_figure_sample(
    scheme: *const FsScheme,
    figure_type: u32,
    figure_id: u64,
    master_seed: u64,
    attempt: u32,
    out: *mut *mut FsFigure,
) -> FsStatus {
    guard(|| {
        non_null!(scheme, out);
        let Some(ft) = parse_figure_type(figure_type) else {
            return fail(FsStatus::InvalidInput, format!("unknown figure type {figure_type}"));
        };
        match sample_figure_with(&SynthConfig::default(), ft, figure_id, &(*scheme).scheme, master_seed, attempt) {
            Ok(spec) => {
                *out = Box::into_raw(Box::new(FsFigure { spec }));
                FsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `figure` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fs_figure_free(figure: *mut FsFigure) {
    if !figure.is_null() {
        drop(Box::from_raw(figure));
    }
}

/// # Safety
/// `figure` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fs_figure_series_count(figure: *const FsFigure, out: *mut usize) -> FsStatus {
    guard(|| {
        non_null!(figure, out);
        *out = (*figure).spec.series.len();
        FsStatus::Ok
    })
}

/// Source data as JSON; free the string with `fs_string_free`.
///
/// # Safety
/// `figure` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fs_figure_to_json(figure: *const FsFigure, out: *mut *mut c_char) -> FsStatus {
    guard(|| {
        non_null!(figure, out);
        match serde_json::to_string(&(*figure).spec) {
            Ok(s) => give_string(s, out),
            Err(e) => fail(FsStatus::Format, e.to_string()),
        }
    })
}

/// Rasterizes a figure. `FS_STATUS_RENDER` means the layout does not fit;
/// sample the next attempt and retry.
///
/// # Safety
/// `figure` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fs_figure_render(
    figure: *const FsFigure,
    base_height: u32,
    per_segment_boxes: bool,
    out: *mut *mut FsRender,
) -> FsStatus {
    guard(|| {
        non_null!(figure, out);
        let opts = RenderOptions {
            base_height,
            per_segment_boxes,
        };
        match render(&(*figure).spec, table(), BitmapFont::embedded(), &opts) {
            Ok(result) => {
                *out = Box::into_raw(Box::new(FsRender { result }));
                FsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `render` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fs_render_free(render: *mut FsRender) {
    if !render.is_null() {
        drop(Box::from_raw(render));
    }
}

/// Borrowed PNG bytes, valid while `render` lives.
///
/// # Safety
/// `render` must be a live handle; `data` and `len` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn fs_render_png(render: *const FsRender, data: *mut *const u8, len: *mut usize) -> FsStatus {
    guard(|| {
        non_null!(render, data, len);
        let png = &(*render).result.png;
        *data = png.as_ptr();
        *len = png.len();
        FsStatus::Ok
    })
}

/// # Safety
/// `render` must be a live handle; `width` and `height` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn fs_render_size(render: *const FsRender, width: *mut u32, height: *mut u32) -> FsStatus {
    guard(|| {
        non_null!(render, width, height);
        *width = (*render).result.width;
        *height = (*render).result.height;
        FsStatus::Ok
    })
}

/// # Safety
/// `render` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fs_render_box_count(render: *const FsRender, out: *mut usize) -> FsStatus {
    guard(|| {
        non_null!(render, out);
        *out = (*render).result.boxes.len();
        FsStatus::Ok
    })
}

/// # Safety
/// `render` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fs_render_box(render: *const FsRender, index: usize, out: *mut FsBox) -> FsStatus {
    guard(|| {
        non_null!(render, out);
        let boxes = &(*render).result.boxes;
        let Some(b) = boxes.get(index) else {
            return fail(FsStatus::OutOfRange, format!("box index {index} out of range"));
        };
        *out = FsBox {
            element_class: element_class(b.element_class),
            color_id: b.color_id.map_or(-1, |c| i32::from(c.0)),
            x: b.x,
            y: b.y,
            w: b.w,
            h: b.h,
        };
        FsStatus::Ok
    })
}

/// Unbalanced question-answer pairs for one figure.
///
/// # Safety
/// `figure` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fs_figure_questions(figure: *const FsFigure, out: *mut *mut FsQaList) -> FsStatus {
    guard(|| {
        non_null!(figure, out);
        let qa = match generate_qa(&(*figure).spec, table()) {
            Ok(qa) => qa,
            Err(e) => return from_error(e),
        };
        let text: Vec<CString> = qa
            .iter()
            .map(|q| CString::new(q.question.clone()).expect("color names contain no NUL"))
            .collect();
        let pairs = qa
            .iter()
            .zip(&text)
            .map(|(q, t)| FsQa {
                figure_id: q.figure_id,
                template_id: q.template_id,
                color_x: i32::from(q.color_x.0),
                color_y: q.color_y.map_or(-1, |c| i32::from(c.0)),
                answer_yes: q.answer == Answer::Yes,
                question: t.as_ptr(),
            })
            .collect();
        *out = Box::into_raw(Box::new(FsQaList { pairs, _text: text }));
        FsStatus::Ok
    })
}

/// # Safety
/// `list` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fs_qa_list_free(list: *mut FsQaList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// # Safety
/// `list` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fs_qa_count(list: *const FsQaList, out: *mut usize) -> FsStatus {
    guard(|| {
        non_null!(list, out);
        *out = (*list).pairs.len();
        FsStatus::Ok
    })
}

/// # Safety
/// `list` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fs_qa_get(list: *const FsQaList, index: usize, out: *mut FsQa) -> FsStatus {
    guard(|| {
        non_null!(list, out);
        let pairs = &(*list).pairs;
        match pairs.get(index) {
            Some(q) => {
                *out = *q;
                FsStatus::Ok
            }
            None => fail(FsStatus::OutOfRange, format!("qa index {index} out of range")),
        }
    })
}

unsafe fn curve<'a>(x: *const f64, y: *const f64, n: usize) -> (&'a [f64], &'a [f64]) {
    (std::slice::from_raw_parts(x, n), std::slice::from_raw_parts(y, n))
}

/// Roughness of a curve given as `n` points.
///
/// # Safety
/// `x` and `y` must point to `n` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fs_roughness(x: *const f64, y: *const f64, n: usize, out: *mut f64) -> FsStatus {
    guard(|| {
        non_null!(x, y, out);
        let (x, y) = curve(x, y, n);
        match metrics::roughness(x, y) {
            Ok(v) => {
                *out = v;
                FsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Trapezoidal area under a curve given as `n` points.
///
/// # Safety
/// `x` and `y` must point to `n` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fs_area_under_curve(x: *const f64, y: *const f64, n: usize, out: *mut f64) -> FsStatus {
    guard(|| {
        non_null!(x, y, out);
        let (x, y) = curve(x, y, n);
        match metrics::area_under_curve(x, y) {
            Ok(v) => {
                *out = v;
                FsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Whether two curves on the shared grid `x` touch or cross.
///
/// # Safety
/// `x`, `a` and `b` must point to `n` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fs_curves_intersect(
    x: *const f64,
    a: *const f64,
    b: *const f64,
    n: usize,
    out: *mut bool,
) -> FsStatus {
    guard(|| {
        non_null!(x, a, b, out);
        let series = |y: *const f64| Series {
            color_id: ColorId(0),
            x_values: std::slice::from_raw_parts(x, n).to_vec(),
            y_values: std::slice::from_raw_parts(y, n).to_vec(),
        };
        match metrics::curves_intersect(&series(a), &series(b)) {
            Ok(v) => {
                *out = v;
                FsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Generates a corpus from a TOML config file. `out_dir` may be NULL to use
/// the configured directory; `workers == 0` uses one per core.
///
/// # Safety
/// `config_path` must be a valid string; `out_dir` NULL or a valid string.
#[no_mangle]
pub unsafe extern "C" fn fs_generate_corpus(
    config_path: *const c_char,
    out_dir: *const c_char,
    workers: usize,
) -> FsStatus {
    guard(|| {
        let path = match read_str(config_path, "config_path") {
            Ok(p) => PathBuf::from(p),
            Err(s) => return s,
        };
        let mut config = match CorpusConfig::load(&path) {
            Ok(c) => c,
            Err(e) => return from_error(e),
        };
        if !out_dir.is_null() {
            match read_str(out_dir, "out_dir") {
                Ok(d) => config.output_dir = PathBuf::from(d),
                Err(s) => return s,
            }
        }
        match generate_corpus(&config, &config.output_dir, workers) {
            Ok(_) => FsStatus::Ok,
            Err(e) => from_error(e),
        }
    })
}

/// Validates a corpus and reports the total violation count; optionally
/// returns the full report as JSON (pass NULL to skip).
///
/// # Safety
/// `dir` must be a valid string, `violations` a valid pointer, `report_json`
/// NULL or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fs_validate_corpus(
    dir: *const c_char,
    full_pixel_scan: bool,
    violations: *mut u64,
    report_json: *mut *mut c_char,
) -> FsStatus {
    guard(|| {
        non_null!(violations);
        let dir = match read_str(dir, "dir") {
            Ok(d) => PathBuf::from(d),
            Err(s) => return s,
        };
        let report = match validate_corpus(&dir, full_pixel_scan) {
            Ok(r) => r,
            Err(e) => return from_error(e),
        };
        *violations = report.violation_count();
        if report_json.is_null() {
            return FsStatus::Ok;
        }
        give_string(serde_json::to_string(&report).expect("report serializes"), report_json)
    })
}
