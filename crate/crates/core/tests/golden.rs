use homwall::instance::{
    gen_adversarial, gen_all_colored, gen_random, parse_instance, write_instance, AdversarialMode,
};
use std::path::PathBuf;

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn golden_files_round_trip() {
    for name in [
        "minimal.cmi",
        "mixed.cmi",
        "random_d8_q3_s7.cmi",
        "stripe_d10_q2_s1.cmi",
        "all_d6_q2.cmi",
        "single_d9_q1_s3.cmi",
    ] {
        let text = golden(name);
        let inst = parse_instance(&text).unwrap();
        assert_eq!(write_instance(&inst), text, "{name}");
    }
}

#[test]
fn mixed_golden_contents() {
    let inst = parse_instance(&golden("mixed.cmi")).unwrap();
    assert_eq!((inst.d_r(), inst.d_c(), inst.q()), (4, 5, 3));
    assert_eq!(inst.vertex_colors().len(), 3);
    assert_eq!(inst.bridges().len(), 4);
    assert_eq!(inst.face_colors(0, 0).to_string(), "{1,2,3}");
    assert!(inst.face_colors(2, 3).is_empty());
    assert_eq!(inst.vertex_color(1, 3).to_string(), "{2,3}");
}

#[test]
fn comments_and_blank_lines_normalize() {
    let noisy = "# header comment\ncmi 1\n\ndims 4 5 3\n# vertices\nvertexcolor 3 4 {1,2,3}\nvertexcolor 0 0 {1}\n\
                 vertexcolor 1 3 {2,3}\nbridge d 1 1 {2}\nbridge c 2 3 {}\nbridge b 0 0 {3}\nbridge a 0 0 {1,2}\n";
    assert_eq!(write_instance(&parse_instance(noisy).unwrap()), golden("mixed.cmi"));
}

#[test]
fn generators_reproduce_golden_files() {
    assert_eq!(write_instance(&gen_random(8, 3, 0.3, 0.5, 7)), golden("random_d8_q3_s7.cmi"));
    assert_eq!(
        write_instance(&gen_adversarial(10, 2, AdversarialMode::BufferStripe, 1)),
        golden("stripe_d10_q2_s1.cmi")
    );
    assert_eq!(write_instance(&gen_all_colored(6, 2)), golden("all_d6_q2.cmi"));
    assert_eq!(write_instance(&gen_adversarial(9, 1, AdversarialMode::SingleTile, 3)), golden("single_d9_q1_s3.cmi"));
}
