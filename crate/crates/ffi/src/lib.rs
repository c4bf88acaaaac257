//! C ABI for `compbo`.
//!
//! Objects cross the boundary as opaque handles created by `*_fit`, `*_open`
//! or `*_new` functions and released with the matching `*_free`. Fallible
//! calls return a [`CompboStatus`]; on failure the message is available from
//! [`compbo_last_error_message`] on the same thread. Outputs are written
//! only on success.
//!
//! Points are passed as row-major `double` arrays with an explicit dimension.

use std::cell::RefCell;
use std::ffi::{c_char, c_void, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;
use std::sync::Arc;

use compbo::acquisition::{c_ei, c_ucb, c_ucb_optimistic, vanilla_ei, vanilla_ucb, CompositionFn, McConfig, UcbSchedule};
use compbo::benchmark::regret_trace;
use compbo::objectives::{self, CompositeObjective, Constituent, OptimumOracle};
use compbo::{run_bo, BoRunResult, BoSettings, CucbBound, Domain, Error, FitConfig, GaussianProcess, PosteriorSummary, Strategy};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompboStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    DegenerateKernel = 4,
    UnknownTask = 5,
    UnknownStrategy = 6,
    GStarTooLow = 7,
    RunFailed = 8,
    Io = 9,
    Panic = 10,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CompboStatus {
    match e {
        Error::DimensionMismatch { .. } => CompboStatus::DimensionMismatch,
        Error::InvalidArgument(_) => CompboStatus::InvalidArgument,
        Error::DegenerateKernel { .. } => CompboStatus::DegenerateKernel,
        Error::UnknownTask(_) => CompboStatus::UnknownTask,
        Error::UnknownStrategy(_) => CompboStatus::UnknownStrategy,
        Error::GStarTooLow { .. } => CompboStatus::GStarTooLow,
        Error::Iteration { .. } | Error::RunFailed { .. } => CompboStatus::RunFailed,
        Error::MalformedResults(_) | Error::Io(_) | Error::Csv(_) | Error::Json(_) => CompboStatus::Io,
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(), Failure>;

/// Runs `f`, converting errors and panics into a status plus last-error message.
fn guard(f: impl FnOnce() -> Outcome) -> CompboStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CompboStatus::Ok
        }
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer passed for `{what}`"));
            CompboStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            let status = status_of(&e);
            set_last_error(e.to_string());
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("internal panic: {msg}"));
            CompboStatus::Panic
        }
    }
}

unsafe fn slice_in<'a>(p: *const f64, len: usize, what: &'static str) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn c_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Lib(Error::InvalidArgument(format!("`{what}` is not valid UTF-8"))))
}

fn posteriors(means: &[f64], variances: &[f64]) -> Vec<PosteriorSummary> {
    means.iter().zip(variances).map(|(&m, &v)| PosteriorSummary::new(m, v)).collect()
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next `compbo_*` call on the same thread.
#[no_mangle]
pub extern "C" fn compbo_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn compbo_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

// ---------------------------------------------------------------------------
// Gaussian processes

/// A fitted Gaussian process.
pub struct CompboGp {
    inner: GaussianProcess,
}

/// Fits a GP to `n` points of dimension `d`. `lower`/`upper` give the domain
/// used to scale inputs and may both be NULL.
///
/// # Safety
/// `points` must hold `n * d` doubles, `targets` `n`, and `lower`/`upper`
/// `d` each when non-NULL. `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn compbo_gp_fit(
    points: *const f64,
    n: usize,
    d: usize,
    targets: *const f64,
    noise_stddev: f64,
    lower: *const f64,
    upper: *const f64,
    out: *mut *mut CompboGp,
) -> CompboStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        if d == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()).into());
        }
        let flat = slice_in(points, n * d, "points")?;
        let y = slice_in(targets, n, "targets")?;
        let pts: Vec<Vec<f64>> = flat.chunks(d).map(<[f64]>::to_vec).collect();
        let domain = match (lower.is_null(), upper.is_null()) {
            (true, true) => None,
            (false, false) => Some(Domain::new(slice_in(lower, d, "lower")?.to_vec(), slice_in(upper, d, "upper")?.to_vec())?),
            _ => return Err(Error::InvalidArgument("give both `lower` and `upper` or neither".into()).into()),
        };
        let cfg = FitConfig {
            noise_stddev,
            domain,
            ..FitConfig::default()
        };
        let gp = GaussianProcess::fit(&pts, y, &cfg)?;
        *out = Box::into_raw(Box::new(CompboGp { inner: gp }));
        Ok(())
    })
}

/// Posterior mean and latent variance at `x`.
///
/// # Safety
/// `gp` must come from [`compbo_gp_fit`]; `x` must hold `d` doubles.
#[no_mangle]
pub unsafe extern "C" fn compbo_gp_posterior(
    gp: *const CompboGp,
    x: *const f64,
    d: usize,
    mean: *mut f64,
    variance: *mut f64,
) -> CompboStatus {
    guard(|| {
        let gp = handle(gp, "gp")?;
        let (mean, variance) = (out_ref(mean, "mean")?, out_ref(variance, "variance")?);
        let p = gp.inner.posterior(slice_in(x, d, "x")?)?;
        *mean = p.mean;
        *variance = p.variance;
        Ok(())
    })
}

/// # Safety
/// `gp` must come from [`compbo_gp_fit`].
#[no_mangle]
pub unsafe extern "C" fn compbo_gp_log_marginal_likelihood(gp: *const CompboGp, out: *mut f64) -> CompboStatus {
    guard(|| {
        *out_ref(out, "out")? = handle(gp, "gp")?.inner.log_marginal_likelihood();
        Ok(())
    })
}

/// Fitted hyperparameters; the lengthscale is in scaled-input units when a
/// domain was given.
///
/// # Safety
/// `gp` must come from [`compbo_gp_fit`].
#[no_mangle]
pub unsafe extern "C" fn compbo_gp_hyperparams(
    gp: *const CompboGp,
    signal_variance: *mut f64,
    lengthscale: *mut f64,
    noise_stddev: *mut f64,
) -> CompboStatus {
    guard(|| {
        let hp = handle(gp, "gp")?.inner.hyperparams();
        let sv = out_ref(signal_variance, "signal_variance")?;
        let ls = out_ref(lengthscale, "lengthscale")?;
        let ns = out_ref(noise_stddev, "noise_stddev")?;
        (*sv, *ls, *ns) = (hp.signal_variance, hp.lengthscale, hp.noise_stddev);
        Ok(())
    })
}

/// # Safety
/// `gp` must come from [`compbo_gp_fit`] and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn compbo_gp_free(gp: *mut CompboGp) {
    if !gp.is_null() {
        drop(Box::from_raw(gp));
    }
}

// ---------------------------------------------------------------------------
// Acquisition functions

/// `h` over `m` constituent values.
pub type CompboCompositionFn = Option<unsafe extern "C" fn(values: *const f64, m: usize, user_data: *mut c_void) -> f64>;

/// Closed-form expected improvement over `best`.
#[no_mangle]
pub extern "C" fn compbo_vanilla_ei(mean: f64, variance: f64, best: f64) -> f64 {
    vanilla_ei(&PosteriorSummary::new(mean, variance), best)
}

/// `mean + beta * sqrt(variance)`.
#[no_mangle]
pub extern "C" fn compbo_vanilla_ucb(mean: f64, variance: f64, beta: f64) -> f64 {
    vanilla_ucb(&PosteriorSummary::new(mean, variance), beta)
}

struct UserData(*mut c_void);
// SAFETY: the caller promises the callback and its data tolerate use from
// whichever thread invokes the library; the library never calls back
// concurrently from an entry point in this file.
unsafe impl Send for UserData {}
unsafe impl Sync for UserData {}

fn callback_composition(m: usize, h: unsafe extern "C" fn(*const f64, usize, *mut c_void) -> f64, user_data: *mut c_void) -> CompositionFn {
    let data = UserData(user_data);
    CompositionFn::new(m, move |v: &[f64]| {
        let data = &data;
        // SAFETY: see `UserData`; `v` has exactly `m` elements.
        unsafe { h(v.as_ptr(), v.len(), data.0) }
    })
}

/// Monte Carlo composite EI with `num_samples` draws from `seed`.
///
/// # Safety
/// `means` and `variances` must hold `m` doubles; `h` must be a valid function.
#[no_mangle]
pub unsafe extern "C" fn compbo_c_ei(
    means: *const f64,
    variances: *const f64,
    m: usize,
    h: CompboCompositionFn,
    user_data: *mut c_void,
    best: f64,
    num_samples: usize,
    seed: u64,
    out: *mut f64,
) -> CompboStatus {
    guard(|| {
        let h = h.ok_or(Failure::Null("h"))?;
        let posts = posteriors(slice_in(means, m, "means")?, slice_in(variances, m, "variances")?);
        let value = c_ei(&posts, &callback_composition(m, h, user_data), best, McConfig::new(num_samples, seed)?)?;
        *out_ref(out, "out")? = value;
        Ok(())
    })
}

/// Composite UCB. `optimistic` non-zero selects the per-constituent signed
/// bound; zero gives `h(mean + beta * sd)`.
///
/// # Safety
/// As for [`compbo_c_ei`].
#[no_mangle]
pub unsafe extern "C" fn compbo_c_ucb(
    means: *const f64,
    variances: *const f64,
    m: usize,
    h: CompboCompositionFn,
    user_data: *mut c_void,
    beta: f64,
    optimistic: i32,
    out: *mut f64,
) -> CompboStatus {
    guard(|| {
        let h = h.ok_or(Failure::Null("h"))?;
        let posts = posteriors(slice_in(means, m, "means")?, slice_in(variances, m, "variances")?);
        let comp = callback_composition(m, h, user_data);
        let value = if optimistic != 0 {
            c_ucb_optimistic(&posts, &comp, beta)?
        } else {
            c_ucb(&posts, &comp, beta)?
        };
        *out_ref(out, "out")? = value;
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Objectives

/// A composite objective: a built-in task or one made of callbacks.
pub struct CompboObjective {
    inner: CompositeObjective,
}

/// Constituent `i` at the point `x` of dimension `d`.
pub type CompboConstituentFn = Option<unsafe extern "C" fn(x: *const f64, d: usize, i: usize, user_data: *mut c_void) -> f64>;

/// `h(x, values)` with `m` constituent values.
pub type CompboOuterFn =
    Option<unsafe extern "C" fn(x: *const f64, d: usize, values: *const f64, m: usize, user_data: *mut c_void) -> f64>;

/// Opens a registered benchmark task by name.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn compbo_task_open(name: *const c_char, out: *mut *mut CompboObjective) -> CompboStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let obj = objectives::task(c_str(name, "name")?)?;
        *out = Box::into_raw(Box::new(CompboObjective { inner: obj }));
        Ok(())
    })
}

/// Builds an objective from callbacks. `g_star` may be NaN when unknown.
///
/// # Safety
/// `lower`/`upper` must hold `d` doubles, `name` be NUL-terminated, the
/// callbacks valid for the handle's lifetime, and `user_data` remain valid
/// until [`compbo_objective_free`].
#[no_mangle]
pub unsafe extern "C" fn compbo_objective_new(
    name: *const c_char,
    d: usize,
    lower: *const f64,
    upper: *const f64,
    m: usize,
    constituent: CompboConstituentFn,
    outer: CompboOuterFn,
    user_data: *mut c_void,
    g_star: f64,
    out: *mut *mut CompboObjective,
) -> CompboStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let name = c_str(name, "name")?;
        let f = constituent.ok_or(Failure::Null("constituent"))?;
        let h = outer.ok_or(Failure::Null("outer"))?;
        let domain = Domain::new(slice_in(lower, d, "lower")?.to_vec(), slice_in(upper, d, "upper")?.to_vec())?;
        let data = Arc::new(UserData(user_data));
        let constituents: Vec<Constituent> = (0..m)
            .map(|i| {
                let data = Arc::clone(&data);
                Arc::new(move |x: &[f64]| unsafe { f(x.as_ptr(), x.len(), i, data.0) }) as Constituent
            })
            .collect();
        let outer_fn = Arc::new(move |x: &[f64], v: &[f64]| unsafe { h(x.as_ptr(), x.len(), v.as_ptr(), v.len(), data.0) });
        let obj = CompositeObjective::new(name, domain, constituents, outer_fn, g_star, OptimumOracle::Grid)?;
        *out = Box::into_raw(Box::new(CompboObjective { inner: obj }));
        Ok(())
    })
}

/// Input dimension, or 0 for NULL.
///
/// # Safety
/// `obj` must be NULL or a live objective handle.
#[no_mangle]
pub unsafe extern "C" fn compbo_objective_dim(obj: *const CompboObjective) -> usize {
    obj.as_ref().map_or(0, |o| o.inner.dim())
}

/// Number of constituents, or 0 for NULL.
///
/// # Safety
/// `obj` must be NULL or a live objective handle.
#[no_mangle]
pub unsafe extern "C" fn compbo_objective_arity(obj: *const CompboObjective) -> usize {
    obj.as_ref().map_or(0, |o| o.inner.arity())
}

/// Stored reference maximum, or NaN for NULL.
///
/// # Safety
/// `obj` must be NULL or a live objective handle.
#[no_mangle]
pub unsafe extern "C" fn compbo_objective_g_star(obj: *const CompboObjective) -> f64 {
    obj.as_ref().map_or(f64::NAN, |o| o.inner.g_star())
}

/// Copies the domain bounds into `lower` and `upper` (each of length `d`).
///
/// # Safety
/// `obj` must be a live handle; `lower`/`upper` must have room for `d` doubles.
#[no_mangle]
pub unsafe extern "C" fn compbo_objective_bounds(obj: *const CompboObjective, lower: *mut f64, upper: *mut f64, d: usize) -> CompboStatus {
    guard(|| {
        let o = &handle(obj, "obj")?.inner;
        if d != o.dim() {
            return Err(Error::DimensionMismatch { expected: o.dim(), actual: d }.into());
        }
        if lower.is_null() || upper.is_null() {
            return Err(Failure::Null("lower/upper"));
        }
        ptr::copy_nonoverlapping(o.domain().lower().as_ptr(), lower, d);
        ptr::copy_nonoverlapping(o.domain().upper().as_ptr(), upper, d);
        Ok(())
    })
}

/// Evaluates every constituent and `g` at `x`. `members` may be NULL;
/// otherwise it receives `m` values.
///
/// # Safety
/// `obj` must be a live handle; `x` must hold `d` doubles; `members`, when
/// not NULL, room for `m`.
#[no_mangle]
pub unsafe extern "C" fn compbo_objective_evaluate(
    obj: *const CompboObjective,
    x: *const f64,
    d: usize,
    members: *mut f64,
    m: usize,
    g: *mut f64,
) -> CompboStatus {
    guard(|| {
        let o = &handle(obj, "obj")?.inner;
        let g = out_ref(g, "g")?;
        if !members.is_null() && m != o.arity() {
            return Err(Error::DimensionMismatch { expected: o.arity(), actual: m }.into());
        }
        let (values, gv) = o.evaluate(slice_in(x, d, "x")?)?;
        if !members.is_null() {
            ptr::copy_nonoverlapping(values.as_ptr(), members, m);
        }
        *g = gv;
        Ok(())
    })
}

/// # Safety
/// `obj` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn compbo_objective_free(obj: *mut CompboObjective) {
    if !obj.is_null() {
        drop(Box::from_raw(obj));
    }
}

// ---------------------------------------------------------------------------
// Optimization runs

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CompboRunOptions {
    /// NUL-terminated: "vanilla-ei", "vanilla-ucb", "c-ei" or "c-ucb".
    pub strategy: *const c_char,
    pub iterations: usize,
    pub init_points: usize,
    pub mc_samples: usize,
    pub beta0: f64,
    pub beta_decay: f64,
    pub seed: u64,
    /// Non-zero selects the literal `h(mean + beta * sd)` bound for c-ucb.
    pub literal_cucb: i32,
}

/// Defaults: c-ucb, 70 iterations, 10 initial points, 128 MC draws,
/// beta 1 decaying by 0.99, seed 0.
#[no_mangle]
pub extern "C" fn compbo_run_options_default() -> CompboRunOptions {
    let s = BoSettings::default();
    CompboRunOptions {
        strategy: c"c-ucb".as_ptr(),
        iterations: 70,
        init_points: 10,
        mc_samples: s.mc_samples,
        beta0: s.ucb.beta0,
        beta_decay: s.ucb.decay,
        seed: 0,
        literal_cucb: 0,
    }
}

/// The records of one finished optimization run.
pub struct CompboRun {
    inner: BoRunResult,
}

/// Runs the full optimization loop on `obj`.
///
/// # Safety
/// `obj` must be a live handle; `options` must point to a valid struct whose
/// `strategy` is NUL-terminated; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn compbo_run_bo(obj: *const CompboObjective, options: *const CompboRunOptions, out: *mut *mut CompboRun) -> CompboStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let o = &handle(obj, "obj")?.inner;
        let opts = handle(options, "options")?;
        let strategy: Strategy = c_str(opts.strategy, "strategy")?.parse()?;
        let settings = BoSettings {
            mc_samples: opts.mc_samples,
            ucb: UcbSchedule::new(opts.beta0, opts.beta_decay)?,
            cucb_bound: if opts.literal_cucb != 0 { CucbBound::Literal } else { CucbBound::Optimistic },
            ..BoSettings::default()
        };
        let result = run_bo(o, strategy, opts.iterations, opts.init_points, &settings, opts.seed)?;
        *out = Box::into_raw(Box::new(CompboRun { inner: result }));
        Ok(())
    })
}

/// Number of records (initial design plus iterations), or 0 for NULL.
///
/// # Safety
/// `run` must be NULL or a live run handle.
#[no_mangle]
pub unsafe extern "C" fn compbo_run_len(run: *const CompboRun) -> usize {
    run.as_ref().map_or(0, |r| r.inner.records.len())
}

/// Number of leading records from the initial design, or 0 for NULL.
///
/// # Safety
/// `run` must be NULL or a live run handle.
#[no_mangle]
pub unsafe extern "C" fn compbo_run_init_points(run: *const CompboRun) -> usize {
    run.as_ref().map_or(0, |r| r.inner.init_points)
}

/// Best observed `g`, or NaN for NULL.
///
/// # Safety
/// `run` must be NULL or a live run handle.
#[no_mangle]
pub unsafe extern "C" fn compbo_run_best_g(run: *const CompboRun) -> f64 {
    run.as_ref().map_or(f64::NAN, |r| r.inner.best_g())
}

/// Wall-clock seconds spent in the acquisition loop, or NaN for NULL.
///
/// # Safety
/// `run` must be NULL or a live run handle.
#[no_mangle]
pub unsafe extern "C" fn compbo_run_loop_seconds(run: *const CompboRun) -> f64 {
    run.as_ref().map_or(f64::NAN, |r| r.inner.loop_time().as_secs_f64())
}

/// Copies record `index`. `x` needs room for `d` values and `members` for
/// `m`; either may be NULL to skip it.
///
/// # Safety
/// `run` must be a live handle and the buffers sized as stated.
#[no_mangle]
pub unsafe extern "C" fn compbo_run_record(
    run: *const CompboRun,
    index: usize,
    x: *mut f64,
    d: usize,
    members: *mut f64,
    m: usize,
    g: *mut f64,
) -> CompboStatus {
    guard(|| {
        let r = &handle(run, "run")?.inner;
        let rec = r.records.get(index).ok_or_else(|| {
            Error::InvalidArgument(format!("record index {index} out of range (len {})", r.records.len()))
        })?;
        if !x.is_null() {
            if d != rec.x.len() {
                return Err(Error::DimensionMismatch { expected: rec.x.len(), actual: d }.into());
            }
            ptr::copy_nonoverlapping(rec.x.as_ptr(), x, d);
        }
        if !members.is_null() {
            if m != rec.member_values.len() {
                return Err(Error::DimensionMismatch {
                    expected: rec.member_values.len(),
                    actual: m,
                }
                .into());
            }
            ptr::copy_nonoverlapping(rec.member_values.as_ptr(), members, m);
        }
        *out_ref(g, "g")? = rec.g_value;
        Ok(())
    })
}

/// Running minimum regret against `g_star` for each acquisition iteration;
/// `out` needs room for `len = compbo_run_len - compbo_run_init_points`.
///
/// # Safety
/// `run` must be a live handle and `out` hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn compbo_run_min_regret(run: *const CompboRun, g_star: f64, out: *mut f64, len: usize) -> CompboStatus {
    guard(|| {
        let r = &handle(run, "run")?.inner;
        let trace = regret_trace(r, g_star, 0)?;
        if len != trace.min_regret.len() {
            return Err(Error::DimensionMismatch {
                expected: trace.min_regret.len(),
                actual: len,
            }
            .into());
        }
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        ptr::copy_nonoverlapping(trace.min_regret.as_ptr(), out, len);
        Ok(())
    })
}

/// # Safety
/// `run` must come from [`compbo_run_bo`] and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn compbo_run_free(run: *mut CompboRun) {
    if !run.is_null() {
        drop(Box::from_raw(run));
    }
}
