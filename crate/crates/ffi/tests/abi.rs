use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use swarmnet_ffi::*;

fn last_error() -> String {
    let p = swarmnet_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn scalar_models() {
    let mut v = 0.0;
    unsafe {
        assert_eq!(
            swarmnet_collision_prob(30, SwarmnetNetwork::FiveG, SwarmnetCollisionMode::Calibrated, &mut v),
            SwarmnetStatus::Ok
        );
        // 100 · 0.02 · 30/10
        assert!((v - 6.0).abs() < 1e-12);
        swarmnet_collision_prob(10, SwarmnetNetwork::FiveG, SwarmnetCollisionMode::Literal, &mut v);
        // 0.02 · 1 · (1 − 0.99999)
        assert!((v - 2e-7).abs() < 1e-18);
        swarmnet_expected_detection_time(50, SwarmnetNetwork::SixG, &mut v);
        assert!((v - 1.5).abs() < 1e-12);
        swarmnet_inference_delay(SwarmnetTask::RoadQualityClassify, &mut v);
        assert_eq!(v, 80.0);
        swarmnet_inference_delay(SwarmnetTask::PotholeDetect, &mut v);
        assert_eq!(v, 115.0);
        swarmnet_raw_bandwidth(1920, 1080, 30.0, 24.0, &mut v);
        assert_eq!(v, 1_492_992_000.0);
        swarmnet_semantic_bandwidth(2048.0, 10.0, &mut v);
        assert_eq!(v, 163_840.0);
    }
}

#[test]
fn errors_are_reported_with_messages() {
    unsafe {
        let s = swarmnet_collision_prob(0, SwarmnetNetwork::SixG, SwarmnetCollisionMode::Calibrated, &mut 0.0);
        assert_eq!(s, SwarmnetStatus::InvalidArgument);
        assert!(last_error().contains("n_drones"));
        let s = swarmnet_expected_detection_time(10, SwarmnetNetwork::SixG, ptr::null_mut());
        assert_eq!(s, SwarmnetStatus::NullPointer);
        assert!(last_error().contains("out_ms"));
    }
}

#[test]
fn table_handle_exposes_ten_rows() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(swarmnet_table1_run(5, 20, &mut t), SwarmnetStatus::Ok);
        assert_eq!(swarmnet_table1_len(t), 10);
        let mut row = std::mem::zeroed::<SwarmnetTable1Row>();
        assert_eq!(swarmnet_table1_row(t, 9, &mut row), SwarmnetStatus::Ok);
        assert_eq!(row.drones, 50);
        assert_eq!(row.network, SwarmnetNetwork::SixG);
        assert_eq!(swarmnet_table1_row(t, 10, &mut row), SwarmnetStatus::OutOfBounds);
        swarmnet_table1_free(t);
    }
}

#[test]
fn codec_round_trip_and_version_mismatch() {
    unsafe {
        let kb = swarmnet_kb_default();
        let msg = swarmnet_message_new(1);
        for (name, v) in [("material", 1.0), ("friction_level", 2.0), ("unevenness_level", 3.0)] {
            let n = CString::new(name).unwrap();
            assert_eq!(swarmnet_message_set(kb, msg, n.as_ptr(), v), SwarmnetStatus::Ok, "{}", last_error());
        }
        let bad = CString::new("friction_level").unwrap();
        assert_eq!(swarmnet_message_set(kb, msg, bad.as_ptr(), 2.5), SwarmnetStatus::InvalidArgument);

        let (mut data, mut len) = (ptr::null_mut(), 0usize);
        assert_eq!(swarmnet_message_encode(kb, msg, &mut data, &mut len), SwarmnetStatus::Ok);
        assert_eq!(len, 11);

        let mut decoded = ptr::null_mut();
        assert_eq!(swarmnet_message_decode(kb, data, len, &mut decoded), SwarmnetStatus::Ok);
        assert_eq!(swarmnet_message_kind(decoded), 1);
        assert_eq!(swarmnet_message_field_count(decoded), 3);
        let (mut name, mut v) = (ptr::null(), 0.0);
        assert_eq!(swarmnet_message_field(decoded, 2, &mut name, &mut v), SwarmnetStatus::Ok);
        assert_eq!(CStr::from_ptr(name).to_str().unwrap(), "unevenness_level");
        assert_eq!(v, 3.0);

        let other = swarmnet_kb_with_version(kb, 2);
        let mut m2 = ptr::null_mut();
        assert_eq!(
            swarmnet_message_decode(other, data, len, &mut m2),
            SwarmnetStatus::KnowledgeBaseMismatch
        );
        assert!(m2.is_null());

        swarmnet_bytes_free(data, len);
        swarmnet_message_free(decoded);
        swarmnet_message_free(msg);
        swarmnet_kb_free(other);
        swarmnet_kb_free(kb);
    }
}

#[test]
fn mission_parse_document_and_simulate() {
    unsafe {
        let req = CString::new("inspect the road for potholes").unwrap();
        let mut m = ptr::null_mut();
        assert_eq!(swarmnet_mission_parse(req.as_ptr(), 0.0, 0.0, &mut m), SwarmnetStatus::ParseError);
        assert_eq!(swarmnet_mission_parse(req.as_ptr(), 100.0, 60.0, &mut m), SwarmnetStatus::Ok);

        let mut doc = ptr::null_mut();
        assert_eq!(swarmnet_mission_to_document(m, &mut doc), SwarmnetStatus::Ok);
        let mut m2 = ptr::null_mut();
        assert_eq!(swarmnet_mission_from_document(doc, &mut m2), SwarmnetStatus::Ok);

        let mut outcome = ptr::null_mut();
        let s = swarmnet_simulate(m2, 3, SwarmnetNetwork::SixG, SwarmnetPolicy::EnergyAware, 4, &mut outcome);
        assert_eq!(s, SwarmnetStatus::Ok, "{}", last_error());
        let text = CStr::from_ptr(outcome).to_str().unwrap();
        assert!(text.starts_with("schema = "));

        swarmnet_string_free(outcome);
        swarmnet_string_free(doc);
        swarmnet_mission_free(m2);
        swarmnet_mission_free(m);
    }
}

#[test]
fn version_is_the_package_version() {
    let v = unsafe { CStr::from_ptr(swarmnet_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn generated_header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/swarmnet.h");
    let text = std::fs::read_to_string(&header).expect("header generated by build script");
    for f in ["swarmnet_table1_run", "swarmnet_message_decode", "swarmnet_simulate", "swarmnet_last_error"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"swarmnet.h\"\nint main(void) { SwarmnetKb *kb = swarmnet_kb_default(); swarmnet_kb_free(kb); return SWARMNET_STATUS_OK; }\n",
    )
    .unwrap();
    let Ok(status) = Command::new("cc")
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(header.parent().unwrap())
        .arg(&src)
        .status()
    else {
        eprintln!("no C compiler on PATH; skipping syntax check");
        return;
    };
    assert!(status.success());
}
