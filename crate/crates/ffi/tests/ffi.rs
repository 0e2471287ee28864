use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use nilgood_ffi::*;

fn check(
    letter: u8,
    rank: u32,
    partition: &str,
    opts: Option<&NilgoodOptions>,
) -> (NilgoodStatus, *mut NilgoodReport) {
    let p = CString::new(partition).unwrap();
    let mut out = ptr::null_mut();
    let o = opts.map_or(ptr::null(), |o| o as *const _);
    let status = unsafe { nilgood_check(letter as c_char, rank, p.as_ptr(), o, &mut out) };
    (status, out)
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(nilgood_last_error_message()) }
        .to_str()
        .unwrap()
        .to_string()
}

#[test]
fn good_orbit_round_trip() {
    let (status, r) = check(b'A', 3, "2,2", None);
    assert_eq!(status, NilgoodStatus::Ok);
    assert!(!r.is_null());
    assert_eq!(last_error(), "");
    unsafe {
        assert_eq!(nilgood_report_verdict(r), NilgoodVerdict::GoodCertified);
        assert_eq!(nilgood_report_dim_ge(r), 7);
        assert_eq!(nilgood_report_bound(r), 5);
        assert_eq!(nilgood_report_degree_sum(r), 5);
        assert_eq!(nilgood_report_degrees(r, ptr::null_mut(), 0), 3);
        let mut buf = [0u32; 3];
        assert_eq!(nilgood_report_degrees(r, buf.as_mut_ptr(), buf.len()), 3);
        assert_eq!(buf, [1, 2, 2]);
        let json = nilgood_report_to_json(r);
        let text = CStr::from_ptr(json).to_str().unwrap().to_string();
        nilgood_string_free(json);
        let parsed = nilgood::report::report_from_json(&text).unwrap();
        assert_eq!(parsed.partition, "2,2");
        nilgood_report_free(r);
    }
}

#[test]
fn verdict_codes_follow_options() {
    let mut opts = nilgood_default_options();
    assert_eq!((opts.trials, opts.search_budget), (8, 32));
    opts.search_budget = 0;
    let (status, r) = check(b'B', 3, "2,2,1,1,1", Some(&opts));
    assert_eq!(status, NilgoodStatus::Ok);
    unsafe {
        assert_eq!(
            nilgood_report_verdict(r),
            NilgoodVerdict::NotCertifiedStandard
        );
        nilgood_report_free(r);
    }
    let (status, r) = check(b'D', 6, "5,3,2,2", None);
    assert_eq!(status, NilgoodStatus::Ok);
    unsafe {
        assert_eq!(nilgood_report_verdict(r), NilgoodVerdict::LikelyNotGood);
        assert_eq!(nilgood_report_degree_sum(r), 11);
        assert_eq!(nilgood_report_bound(r), 12);
        nilgood_report_free(r);
    }
}

#[test]
fn errors_set_status_and_message() {
    let (status, r) = check(b'C', 2, "3,1", None);
    assert_eq!(status, NilgoodStatus::InputError);
    assert!(r.is_null());
    assert!(last_error().contains("every odd part must have even multiplicity"));

    let (status, _) = check(b'Q', 2, "1", None);
    assert_eq!(status, NilgoodStatus::InputError);
    let (status, _) = check(b'A', 40, "2", None);
    assert_eq!(status, NilgoodStatus::InputError);

    let mut out = ptr::null_mut();
    let status = unsafe { nilgood_check(b'A' as c_char, 1, ptr::null(), ptr::null(), &mut out) };
    assert_eq!(status, NilgoodStatus::NullOrInvalidArgument);
    let p = CString::new("2").unwrap();
    let status =
        unsafe { nilgood_check(b'A' as c_char, 1, p.as_ptr(), ptr::null(), ptr::null_mut()) };
    assert_eq!(status, NilgoodStatus::NullOrInvalidArgument);

    let mut opts = nilgood_default_options();
    opts.time_budget_secs = 1;
    let (status, r) = check(b'C', 4, "1,1,1,1,1,1,1,1", Some(&opts));
    assert_eq!(status, NilgoodStatus::TimeBudgetExceeded);
    assert!(r.is_null());

    unsafe {
        assert_eq!(
            nilgood_report_verdict(ptr::null()),
            NilgoodVerdict::NotCertifiedStandard
        );
        assert!(nilgood_report_to_json(ptr::null()).is_null());
        nilgood_report_free(ptr::null_mut());
        nilgood_string_free(ptr::null_mut());
    }
}

#[test]
fn orbit_list_and_version() {
    let mut out = ptr::null_mut();
    let status = unsafe { nilgood_orbit_list(b'C' as c_char, 2, &mut out) };
    assert_eq!(status, NilgoodStatus::Ok);
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    unsafe { nilgood_string_free(out) };
    let labels: Vec<nilgood::nilpotent::OrbitLabel> = serde_json::from_str(&text).unwrap();
    let parts: Vec<String> = labels.iter().map(|l| l.partition.to_string()).collect();
    assert_eq!(parts, ["4", "2,2", "2,1,1", "1,1,1,1"]);
    let v = unsafe { CStr::from_ptr(nilgood_version()) }
        .to_str()
        .unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

fn which(cmd: &str) -> bool {
    Command::new(cmd).arg("--version").output().is_ok()
}

#[test]
fn header_compiles_and_links_from_c() {
    let header_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    assert!(header_dir.join("nilgood.h").exists());
    let lib = target_dir().join("libnilgood_ffi.a");
    if !which("cc") || !lib.exists() {
        eprintln!("cc or {} unavailable; C link test not run", lib.display());
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "nilgood.h"
int main(void) {
    NilgoodReport *r = NULL;
    NilgoodOptions o = nilgood_default_options();
    if (nilgood_check('A', 2, "3", &o, &r) != NILGOOD_STATUS_OK) return 1;
    uint32_t d[4];
    size_t n = nilgood_report_degrees(r, d, 4);
    printf("%d %zu %u %u\n", (int)nilgood_report_verdict(r), n, d[0], d[1]);
    nilgood_report_free(r);
    if (nilgood_check('C', 2, "3,1", NULL, &r) != NILGOOD_STATUS_INPUT_ERROR) return 2;
    return r == NULL ? 0 : 3;
}
"#,
    )
    .unwrap();
    let exe = tmp.path().join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0 2 1 1\n");
}
