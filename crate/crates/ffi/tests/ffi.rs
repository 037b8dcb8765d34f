use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use integen_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { integen_string_free(s) };
    out
}

fn last_error() -> Option<String> {
    let p = integen_last_error_message();
    (!p.is_null()).then(|| take(p))
}

fn dataset(seed: u64, method: &str, count: usize) -> *mut IntegenDataset {
    let cfg = integen_config_new(seed);
    let m = CString::new(method).unwrap();
    unsafe {
        assert_eq!(integen_config_set_method(cfg, m.as_ptr()), IntegenStatus::Ok);
        let mut ds = ptr::null_mut();
        assert_eq!(integen_generate(cfg, count, &mut ds), IntegenStatus::Ok);
        integen_config_free(cfg);
        ds
    }
}

fn field(ds: *const IntegenDataset, i: usize, f: IntegenField) -> String {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { integen_dataset_get(ds, i, f, &mut out) }, IntegenStatus::Ok);
    take(out)
}

#[test]
fn generate_and_read_back() {
    let ds = dataset(11, "poly", 4);
    assert_eq!(unsafe { integen_dataset_len(ds) }, 4);
    for i in 0..4 {
        assert_eq!(field(ds, i, IntegenField::Method), "poly");
        assert!(!field(ds, i, IntegenField::IntegrandInfix).is_empty());
        assert!(!field(ds, i, IntegenField::Tower).is_empty());
    }
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { integen_dataset_get(ds, 4, IntegenField::Method, &mut out) }, IntegenStatus::OutOfRange);
    assert!(last_error().unwrap().contains("index 4"));
    unsafe { integen_dataset_free(ds) };
}

#[test]
fn generated_pairs_verify_through_prefix_strings() {
    let ds = dataset(5, "mixed", 6);
    for i in 0..6 {
        let f = CString::new(field(ds, i, IntegenField::IntegrandPrefix)).unwrap();
        let g = CString::new(field(ds, i, IntegenField::IntegralPrefix)).unwrap();
        let mut ok = false;
        assert_eq!(unsafe { integen_verify_prefix(f.as_ptr(), g.as_ptr(), &mut ok) }, IntegenStatus::Ok);
        assert!(ok, "pair {i}");
    }
    unsafe { integen_dataset_free(ds) };
}

#[test]
fn wrong_integral_fails_verification() {
    // D(x^2) is 2x, not x
    let f = CString::new("x").unwrap();
    let g = CString::new("pow x 2").unwrap();
    let mut ok = true;
    assert_eq!(unsafe { integen_verify_prefix(f.as_ptr(), g.as_ptr(), &mut ok) }, IntegenStatus::Ok);
    assert!(!ok);
}

#[test]
fn jsonl_round_trip_and_batch_verify() {
    let ds = dataset(3, "sqfree", 5);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { integen_dataset_to_jsonl(ds, &mut out) }, IntegenStatus::Ok);
    let text = take(out);
    assert_eq!(text.lines().count(), 5);
    let c = CString::new(text).unwrap();
    let (mut pass, mut fail) = (0usize, 0usize);
    assert_eq!(unsafe { integen_verify_jsonl(c.as_ptr(), &mut pass, &mut fail) }, IntegenStatus::Ok);
    assert_eq!((pass, fail), (5, 0));
    unsafe { integen_dataset_free(ds) };
}

#[test]
fn same_seed_same_bytes() {
    let jsonl = |seed| {
        let ds = dataset(seed, "hermite", 3);
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { integen_dataset_to_jsonl(ds, &mut out) }, IntegenStatus::Ok);
        unsafe { integen_dataset_free(ds) };
        take(out)
    };
    assert_eq!(jsonl(8), jsonl(8));
}

#[test]
fn status_codes() {
    let cfg = integen_config_new(1);
    let bad = CString::new("trig").unwrap();
    let exp = CString::new("exp").unwrap();
    unsafe {
        assert_eq!(integen_config_set_method(cfg, bad.as_ptr()), IntegenStatus::InvalidArgument);
        assert!(last_error().unwrap().contains("trig"));
        assert_eq!(integen_config_set_method(cfg, ptr::null()), IntegenStatus::Ok);
        assert!(last_error().is_none());

        assert_eq!(integen_config_set_extension(cfg, exp.as_ptr()), IntegenStatus::Ok);
        assert_eq!(integen_config_validate(cfg), IntegenStatus::Ok);
        assert_eq!(integen_config_set_arctan_factors(cfg, true), IntegenStatus::Ok);
        assert_eq!(integen_config_validate(cfg), IntegenStatus::InvalidConfig);
        let mut ds = ptr::null_mut();
        assert_eq!(integen_generate(cfg, 2, &mut ds), IntegenStatus::InvalidConfig);
        assert!(ds.is_null());

        assert_eq!(integen_config_set_arctan_factors(cfg, false), IntegenStatus::Ok);
        assert_eq!(integen_config_set_tower_height(cfg, 3), IntegenStatus::Ok);
        assert_eq!(integen_config_validate(cfg), IntegenStatus::InvalidConfig);

        assert_eq!(integen_generate(ptr::null(), 1, &mut ds), IntegenStatus::NullPointer);
        assert_eq!(integen_generate(cfg, 1, ptr::null_mut()), IntegenStatus::NullPointer);
        assert_eq!(integen_config_set_tower_height(ptr::null_mut(), 1), IntegenStatus::NullPointer);
        integen_config_free(cfg);
        integen_config_free(ptr::null_mut());
        integen_dataset_free(ptr::null_mut());
        integen_string_free(ptr::null_mut());
        assert_eq!(integen_dataset_len(ptr::null()), 0);
    }
}

#[test]
fn parse_errors_and_utf8() {
    let truncated = CString::new("add x").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { integen_prefix_to_infix(truncated.as_ptr(), &mut out) }, IntegenStatus::Parse);
    assert!(out.is_null());
    assert!(last_error().unwrap().contains("token"));

    let bytes = [0xffu8, 0];
    assert_eq!(
        unsafe { integen_prefix_to_infix(bytes.as_ptr().cast(), &mut out) },
        IntegenStatus::InvalidUtf8
    );

    let ok = CString::new("mul 3 ln x").unwrap();
    assert_eq!(unsafe { integen_prefix_to_infix(ok.as_ptr(), &mut out) }, IntegenStatus::Ok);
    assert_eq!(take(out), "3*ln(x)");
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(integen_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api_and_compiles_as_c() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/integen.h")).unwrap();
    for name in [
        "integen_generate",
        "integen_verify_prefix",
        "integen_verify_jsonl",
        "integen_last_error_message",
        "integen_string_free",
        "typedef struct IntegenConfig IntegenConfig",
        "INTEGEN_STATUS_PANIC = 10",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }

    let src = std::env::temp_dir().join(format!("integen_ffi_{}.c", std::process::id()));
    std::fs::write(
        &src,
        "#include \"integen.h\"\n\
         int main(void) {\n\
           IntegenConfig *c = integen_config_new(1);\n\
           IntegenDataset *d = NULL;\n\
           IntegenStatus s = integen_generate(c, 1, &d);\n\
           integen_dataset_free(d);\n\
           integen_config_free(c);\n\
           return s == INTEGEN_STATUS_OK ? 0 : 1;\n\
         }\n",
    )
    .unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .status()
        .expect("a C compiler is required to check the header");
    let _ = std::fs::remove_file(&src);
    assert!(status.success());
}
