use std::ffi::{CStr, CString};
use std::ptr;

use cops_ffi::*;

fn parse(text: &str) -> *mut CopsGraph {
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { cops_graph_parse(c.as_ptr(), &mut g) },
        CopsStatus::Ok
    );
    g
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { cops_string_free(s) };
    out
}

fn petersen() -> *mut CopsGraph {
    let edges: [usize; 30] = [
        0, 1, 1, 2, 2, 3, 3, 4, 4, 0, 0, 5, 1, 6, 2, 7, 3, 8, 4, 9, 5, 7, 7, 9, 9, 6, 6, 8, 8, 5,
    ];
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { cops_graph_from_edges(10, edges.as_ptr(), 15, &mut g) },
        CopsStatus::Ok
    );
    g
}

#[test]
fn petersen_cop_number_without_strings() {
    let g = petersen();
    assert_eq!(unsafe { cops_graph_vertex_count(g) }, 10);
    assert_eq!(unsafe { cops_graph_edge_count(g) }, 15);
    let mut c = 0;
    assert_eq!(
        unsafe { cops_cop_number(g, 3, 1 << 24, &mut c) },
        CopsStatus::Ok
    );
    assert_eq!(c, 3);
    let mut c2 = 99;
    assert_eq!(
        unsafe { cops_cop_number(g, 2, 1 << 24, &mut c2) },
        CopsStatus::Ok
    );
    assert_eq!(c2, 0);
    unsafe { cops_graph_free(g) };
}

#[test]
fn solution_handle_and_placement() {
    let g = parse("4 4\n0 1\n0 3\n1 2\n2 3\n");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cops_solve(g, 1, 1 << 20, &mut s) }, CopsStatus::Ok);
    assert_eq!(unsafe { cops_solution_cops_win(s) }, 0);
    unsafe { cops_solution_free(s) };

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cops_solve(g, 2, 1 << 20, &mut s) }, CopsStatus::Ok);
    assert_eq!(unsafe { cops_solution_cops_win(s) }, 1);
    let mut buf = [0usize; 1];
    let mut n = 0;
    assert_eq!(
        unsafe { cops_solution_placement(s, buf.as_mut_ptr(), 1, &mut n) },
        CopsStatus::BufferTooSmall
    );
    assert_eq!(n, 2);
    let mut buf = [usize::MAX; 2];
    assert_eq!(
        unsafe { cops_solution_placement(s, buf.as_mut_ptr(), 2, &mut n) },
        CopsStatus::Ok
    );
    assert!(buf.iter().all(|&v| v < 4));
    unsafe { cops_solution_free(s) };
    unsafe { cops_graph_free(g) };
}

#[test]
fn errors_carry_codes_and_messages() {
    let bad = CString::new("3 2\n0 1\n1 x\n").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { cops_graph_parse(bad.as_ptr(), &mut g) },
        CopsStatus::Parse
    );
    assert!(g.is_null());
    let msg = unsafe { CStr::from_ptr(cops_last_error()) }
        .to_str()
        .unwrap();
    assert!(msg.contains("line 3"), "{msg}");

    assert_eq!(
        unsafe { cops_graph_parse(ptr::null(), &mut g) },
        CopsStatus::NullPointer
    );

    let g = petersen();
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { cops_solve(g, 3, 10, &mut s) },
        CopsStatus::ResourceLimit
    );
    assert_eq!(
        unsafe { cops_solve(g, 0, 10, &mut s) },
        CopsStatus::InvalidArgument
    );
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { cops_meyniel_json(g, 2, 7, 1, &mut out) },
        CopsStatus::InvalidArgument
    );
    unsafe { cops_graph_free(g) };
    // null handles are ignored
    unsafe { cops_graph_free(ptr::null_mut()) };
    unsafe { cops_string_free(ptr::null_mut()) };
}

#[test]
fn json_results() {
    let l = CString::new("1024").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { cops_bound_json(l.as_ptr(), &mut out) },
        CopsStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["params"]["t"]["lo"], 2.0);
    assert_eq!(v["params"]["threshold"]["lo"], 4.0);
    assert_eq!(v["params"]["p"]["lo"], 2f64.powi(-12));
    assert_eq!(v["params"]["p"]["exact"], true);

    let g = petersen();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { cops_meyniel_json(g, 2, 0, 5, &mut out) },
        CopsStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["transcript"]["outcome"]["kind"], "caught");
    assert_eq!(
        v["cops_used"].as_u64().unwrap(),
        v["guards"].as_u64().unwrap() + v["family_cops"].as_u64().unwrap()
    );
    let mut el = ptr::null_mut();
    assert_eq!(
        unsafe { cops_graph_to_edge_list(g, &mut el) },
        CopsStatus::Ok
    );
    assert!(take(el).starts_with("10 15\n"));
    unsafe { cops_graph_free(g) };
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/cops_ffi.h"))
        .unwrap();
    for name in [
        "cops_graph_parse",
        "cops_graph_from_edges",
        "cops_graph_free",
        "cops_solve",
        "cops_solution_placement",
        "cops_cop_number",
        "cops_bound_json",
        "cops_meyniel_json",
        "cops_string_free",
        "cops_last_error",
        "COPS_STATUS_RESOURCE_LIMIT",
        "typedef struct CopsGraph CopsGraph",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
}
