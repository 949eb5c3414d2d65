use std::ffi::{CStr, CString};
use std::ptr;

use indecomp_ffi::*;

fn parse(text: &str) -> *mut IndecGraph {
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { indec_graph_parse(c.as_ptr(), &mut g) }, IndecStatus::Ok);
    g
}

fn take_string(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { indec_string_free(s) };
    out
}

fn last_error() -> String {
    let p = indec_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn path_roundtrip() {
    let edges: Vec<usize> = (0..13).flat_map(|i| [i, i + 1]).collect();
    let mut g = ptr::null_mut();
    let st = unsafe { indec_graph_from_edges(14, edges.as_ptr(), 13, &mut g) };
    assert_eq!(st, IndecStatus::Ok);
    assert_eq!(unsafe { indec_graph_vertex_count(g) }, 14);

    let mut prime = false;
    assert_eq!(unsafe { indec_is_indecomposable(g, &mut prime) }, IndecStatus::Ok);
    assert!(prime);

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { indec_graph_to_graph6(g, &mut s) }, IndecStatus::Ok);
    let g6 = take_string(s);
    let h = parse(&g6);
    let mut adj = false;
    assert_eq!(unsafe { indec_graph_has_edge(h, 3, 4, &mut adj) }, IndecStatus::Ok);
    assert!(adj);

    let mut c = IndecClassification {
        two_covered: false,
        complemented: false,
        cover_a: 0,
        cover_b: 0,
        class_id: IndecClass::None,
    };
    assert_eq!(unsafe { indec_classify(h, &mut c) }, IndecStatus::Ok);
    assert!(c.two_covered);
    assert_eq!((c.cover_a, c.cover_b), (0, 12));
    assert_eq!(c.class_id, IndecClass::PMinus1);

    let mut ig = ptr::null_mut();
    assert_eq!(unsafe { indec_indecomposability_graph(h, &mut ig) }, IndecStatus::Ok);
    assert_eq!(unsafe { indec_graph_vertex_count(ig) }, 14);
    unsafe {
        indec_graph_free(ig);
        indec_graph_free(h);
        indec_graph_free(g);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let mut g = ptr::null_mut();
    let edges = [0usize, 2];
    let st = unsafe { indec_graph_from_edges(2, edges.as_ptr(), 1, &mut g) };
    assert_eq!(st, IndecStatus::VertexOutOfRange);
    assert!(g.is_null());
    assert!(last_error().contains("out of range"));

    let st = unsafe { indec_graph_parse(ptr::null(), &mut g) };
    assert_eq!(st, IndecStatus::NullPointer);

    let bad = CString::new("3 1\n2 2\n").unwrap();
    assert_eq!(unsafe { indec_graph_parse(bad.as_ptr(), &mut g) }, IndecStatus::LoopEdge);

    let k4 = parse("4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
    let mut ig = ptr::null_mut();
    let st = unsafe { indec_indecomposability_graph(k4, &mut ig) };
    assert_eq!(st, IndecStatus::NotIndecomposable);
    let mut c = std::mem::MaybeUninit::<IndecClassification>::uninit();
    assert_eq!(unsafe { indec_classify(k4, c.as_mut_ptr()) }, IndecStatus::SizeOutOfRange);
    unsafe { indec_graph_free(k4) };

    let mut prime = true;
    let edgeless = parse("1 0\n");
    assert_eq!(unsafe { indec_is_indecomposable(edgeless, &mut prime) }, IndecStatus::Ok);
    assert!(indec_last_error().is_null());
    unsafe { indec_graph_free(edgeless) };
}

#[test]
fn verify_json() {
    let id = CString::new("remark-1").unwrap();
    let opts = IndecVerifyOptions {
        n: 8,
        mode: IndecMode::Default,
        has_seed: false,
        seed: 0,
        count: 0,
        jobs: 1,
    };
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { indec_verify(id.as_ptr(), &opts, &mut out) }, IndecStatus::Ok);
    let json: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(json["pass"], true);
    assert_eq!(json["statement_id"], "REMARK-1");

    let bogus = CString::new("LEMMA-0").unwrap();
    let st = unsafe { indec_verify(bogus.as_ptr(), ptr::null(), &mut out) };
    assert_eq!(st, IndecStatus::UnknownStatement);
}
