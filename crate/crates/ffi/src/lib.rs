//! C ABI over `cocycle-forge`.
//!
//! Groups and cocycles cross the boundary as opaque handles created by the
//! `cf_*` constructors and released with the matching `*_free`. Every
//! fallible call returns a [`CfStatus`]; on failure the message is available
//! from [`cf_last_error_message`] on the same thread. Strings returned
//! through `char **` outputs are owned by the caller and released with
//! [`cf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use cocycle_forge::algebra::AlgebraContext;
use cocycle_forge::decomposition::decompose_by_classes;
use cocycle_forge::generators::{graph_dot, GraphKind};
use cocycle_forge::io;
use cocycle_forge::{AdditiveNaturals, BinaryTable, Cocycle, Group, SemilinearMap};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    ParseError = 3,
    ValidationError = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfGraphKind {
    Element = 0,
    Generator = 1,
}

/// Opaque finite group.
pub struct CfGroup(Arc<Group>);

/// Opaque validated idempotent cocycle.
pub struct CfCocycle(Cocycle);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(CfStatus, String);

fn fail<T>(status: CfStatus, message: impl ToString) -> Result<T, Failure> {
    Err(Failure(status, message.to_string()))
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> CfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CfStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CfStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    if p.is_null() {
        return fail(CfStatus::NullArgument, format!("{name} is NULL"));
    }
    Ok(&*p)
}

unsafe fn out_ptr<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    if p.is_null() {
        return fail(CfStatus::NullArgument, format!("{name} is NULL"));
    }
    Ok(&mut *p)
}

unsafe fn slice<'a, T>(p: *const T, len: usize, name: &str) -> Result<&'a [T], Failure> {
    if p.is_null() {
        return fail(CfStatus::NullArgument, format!("{name} is NULL"));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .expect("library text has no NUL bytes")
        .into_raw()
}

/// Message of the last failed call on this thread, or NULL after a
/// success. Valid until the next `cf_*` call on the same thread.
#[no_mangle]
pub extern "C" fn cf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn cf_group_cyclic(n: usize, out: *mut *mut CfGroup) -> CfStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let g = Group::cyclic(n).or_else(|e| fail(CfStatus::InvalidArgument, e))?;
        *out = Box::into_raw(Box::new(CfGroup(Arc::new(g))));
        Ok(())
    })
}

/// The dihedral group of order `2m`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn cf_group_dihedral(m: usize, out: *mut *mut CfGroup) -> CfStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let g = Group::dihedral(m).or_else(|e| fail(CfStatus::InvalidArgument, e))?;
        *out = Box::into_raw(Box::new(CfGroup(Arc::new(g))));
        Ok(())
    })
}

/// Validates a row-major `n x n` Cayley table with identity `0`.
///
/// # Safety
/// `table` must point to `n * n` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cf_group_from_table(
    table: *const usize,
    n: usize,
    out: *mut *mut CfGroup,
) -> CfStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let cells = slice(
            table,
            n.checked_mul(n)
                .ok_or(Failure(CfStatus::InvalidArgument, "n too large".into()))?,
            "table",
        )?;
        let rows: Vec<Vec<usize>> = cells.chunks(n.max(1)).map(<[usize]>::to_vec).collect();
        let g = Group::from_table(&rows).or_else(|e| fail(CfStatus::ValidationError, e))?;
        *out = Box::into_raw(Box::new(CfGroup(Arc::new(g))));
        Ok(())
    })
}

/// Order of the group, or 0 for NULL.
///
/// # Safety
/// `group` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cf_group_order(group: *const CfGroup) -> usize {
    group.as_ref().map_or(0, |g| g.0.order())
}

/// # Safety
/// `group` must be NULL or a live handle, freed once.
#[no_mangle]
pub unsafe extern "C" fn cf_group_free(group: *mut CfGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Builds and validates a cocycle from `n * n` row-major bytes, non-zero
/// meaning 1.
///
/// # Safety
/// `group` must be live, `bits` must hold `len` bytes and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn cf_cocycle_from_table(
    group: *const CfGroup,
    bits: *const u8,
    len: usize,
    out: *mut *mut CfCocycle,
) -> CfStatus {
    guard(|| {
        let g = &borrow(group, "group")?.0;
        let out = out_ptr(out, "out")?;
        let n = g.order();
        let bits = slice(bits, len, "bits")?;
        if len != n * n {
            return fail(
                CfStatus::InvalidArgument,
                format!("expected {} entries, got {len}", n * n),
            );
        }
        let rows: Vec<Vec<bool>> = bits
            .chunks(n)
            .map(|r| r.iter().map(|&b| b != 0).collect())
            .collect();
        let table = BinaryTable::from_rows(g.clone(), &rows)
            .or_else(|e| fail(CfStatus::InvalidArgument, e))?;
        let c = Cocycle::validate(table).or_else(|e| fail(CfStatus::ValidationError, e))?;
        *out = Box::into_raw(Box::new(CfCocycle(c)));
        Ok(())
    })
}

/// Parses the text table format: `n` lines of `n` characters `0`/`1`.
///
/// # Safety
/// `group` must be live, `text` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cf_cocycle_from_text(
    group: *const CfGroup,
    text: *const c_char,
    out: *mut *mut CfCocycle,
) -> CfStatus {
    guard(|| {
        let g = &borrow(group, "group")?.0;
        let out = out_ptr(out, "out")?;
        let text = CStr::from_ptr(borrow(text, "text")?)
            .to_str()
            .or_else(|e| fail(CfStatus::ParseError, e))?;
        let c = io::parse_cocycle(g, text, "text").map_err(|e| {
            let status = if e.exit_code() == 2 {
                CfStatus::ParseError
            } else {
                CfStatus::ValidationError
            };
            Failure(status, e.to_string())
        })?;
        *out = Box::into_raw(Box::new(CfCocycle(c)));
        Ok(())
    })
}

/// `f_r` for a semilinear map `r` into the additive naturals.
///
/// # Safety
/// `group` must be live, `values` must hold `len` entries and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn cf_cocycle_from_r(
    group: *const CfGroup,
    values: *const u64,
    len: usize,
    out: *mut *mut CfCocycle,
) -> CfStatus {
    guard(|| {
        let g = &borrow(group, "group")?.0;
        let out = out_ptr(out, "out")?;
        let values = slice(values, len, "values")?;
        let r = SemilinearMap::new(g.clone(), AdditiveNaturals, values.to_vec())
            .or_else(|e| fail(CfStatus::ValidationError, e))?;
        *out = Box::into_raw(Box::new(CfCocycle(r.cocycle())));
        Ok(())
    })
}

/// # Safety
/// `cocycle` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cf_cocycle_get(
    cocycle: *const CfCocycle,
    s: usize,
    t: usize,
    out: *mut u8,
) -> CfStatus {
    guard(|| {
        let c = &borrow(cocycle, "cocycle")?.0;
        let out = out_ptr(out, "out")?;
        if s >= c.order() || t >= c.order() {
            return fail(CfStatus::InvalidArgument, format!("({s},{t}) out of range"));
        }
        *out = u8::from(c.get(s, t));
        Ok(())
    })
}

/// Writes one byte per group element into `members` (1 for elements of
/// the inertial group) and its size into `size`.
///
/// # Safety
/// `cocycle` must be live, `members` must hold `len >= n` bytes and `size` be writable.
#[no_mangle]
pub unsafe extern "C" fn cf_cocycle_inertial(
    cocycle: *const CfCocycle,
    members: *mut u8,
    len: usize,
    size: *mut usize,
) -> CfStatus {
    guard(|| {
        let c = &borrow(cocycle, "cocycle")?.0;
        let size = out_ptr(size, "size")?;
        if members.is_null() {
            return fail(CfStatus::NullArgument, "members is NULL");
        }
        if len < c.order() {
            return fail(
                CfStatus::InvalidArgument,
                format!("members holds {len} bytes, need {}", c.order()),
            );
        }
        let h = c
            .inertial_group()
            .or_else(|e| fail(CfStatus::ValidationError, e))?;
        let buf = std::slice::from_raw_parts_mut(members, c.order());
        for (x, b) in buf.iter_mut().enumerate() {
            *b = u8::from(h.contains(x));
        }
        *size = h.len();
        Ok(())
    })
}

/// The least `t` with `J^(t+1) = 0`.
///
/// # Safety
/// `cocycle` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cf_cocycle_nilpotency(
    cocycle: *const CfCocycle,
    out: *mut usize,
) -> CfStatus {
    guard(|| {
        let c = &borrow(cocycle, "cocycle")?.0;
        let out = out_ptr(out, "out")?;
        let ctx = AlgebraContext::new(c.clone()).or_else(|e| fail(CfStatus::ValidationError, e))?;
        *out = ctx.depth();
        Ok(())
    })
}

/// The class decomposition report, one part per line.
///
/// # Safety
/// `cocycle` must be live and `out` writable; free the result with `cf_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cf_cocycle_decompose_classes(
    cocycle: *const CfCocycle,
    out: *mut *mut c_char,
) -> CfStatus {
    guard(|| {
        let c = &borrow(cocycle, "cocycle")?.0;
        let out = out_ptr(out, "out")?;
        let ctx = AlgebraContext::new(c.clone()).or_else(|e| fail(CfStatus::ValidationError, e))?;
        let d = decompose_by_classes(&ctx).or_else(|e| fail(CfStatus::ValidationError, e))?;
        *out = into_c_string(d.to_string());
        Ok(())
    })
}

/// # Safety
/// `cocycle` must be live and `out` writable; free the result with `cf_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cf_cocycle_graph_dot(
    cocycle: *const CfCocycle,
    kind: CfGraphKind,
    out: *mut *mut c_char,
) -> CfStatus {
    guard(|| {
        let c = &borrow(cocycle, "cocycle")?.0;
        let out = out_ptr(out, "out")?;
        let ctx = AlgebraContext::new(c.clone()).or_else(|e| fail(CfStatus::ValidationError, e))?;
        let kind = match kind {
            CfGraphKind::Element => GraphKind::Element,
            CfGraphKind::Generator => GraphKind::Generator,
        };
        *out = into_c_string(graph_dot(&ctx, kind));
        Ok(())
    })
}

/// The table in text form.
///
/// # Safety
/// `cocycle` must be live and `out` writable; free the result with `cf_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cf_cocycle_to_text(
    cocycle: *const CfCocycle,
    out: *mut *mut c_char,
) -> CfStatus {
    guard(|| {
        let c = &borrow(cocycle, "cocycle")?.0;
        let out = out_ptr(out, "out")?;
        *out = into_c_string(io::emit_table(c.table()));
        Ok(())
    })
}

/// # Safety
/// `cocycle` must be NULL or a live handle, freed once.
#[no_mangle]
pub unsafe extern "C" fn cf_cocycle_free(cocycle: *mut CfCocycle) {
    if !cocycle.is_null() {
        drop(Box::from_raw(cocycle));
    }
}
