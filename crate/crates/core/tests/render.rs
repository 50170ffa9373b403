use lamin_mate::dynamics::{Complex64, RayOptions};
use lamin_mate::lamination::generate;
use lamin_mate::render::{
    render_dynamical_overlay, render_lamination_disk, render_m1_overlay, render_m2, sidecar_path, with_threads,
    RenderConfig, Viewport,
};

fn small_m1() -> RenderConfig {
    RenderConfig {
        width: 160,
        height: 160,
        max_iter: 200,
        lamination_depth: Some(1),
        ray_angles: vec!["1/6".parse().unwrap()],
        ..RenderConfig::m1()
    }
}

#[test]
fn renders_do_not_depend_on_thread_count() {
    let lam = generate(2).unwrap();
    let opts = RayOptions::default();
    let run = |threads| {
        with_threads(Some(threads), || {
            let m1 = render_m1_overlay(&small_m1(), &lam, &opts).unwrap();
            let m2 = render_m2(&RenderConfig {
                width: 96,
                height: 96,
                ..RenderConfig::m2()
            })
            .unwrap();
            let jul = render_dynamical_overlay(
                Complex64::new(-1.0, 0.0),
                &RenderConfig {
                    viewport: Viewport::new(-1.8, 1.8, -1.2, 1.2).unwrap(),
                    width: 120,
                    height: 80,
                    shade_wake: false,
                    leaf_height: 0.05,
                    ..small_m1()
                },
                &lam,
                &opts,
            )
            .unwrap();
            [m1, m2, jul].map(|g| (g.to_png_bytes().unwrap(), g.sidecar_json().unwrap()))
        })
        .unwrap()
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(4));
}

#[test]
fn png_and_sidecar_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m2.png");
    let g = render_m2(&RenderConfig {
        width: 64,
        height: 64,
        ..RenderConfig::m2()
    })
    .unwrap();
    let side = g.write_png(&path).unwrap();
    assert_eq!(side, sidecar_path(&path));
    let img = image::open(&path).unwrap();
    assert_eq!((img.width(), img.height()), (64, 64));
    let meta: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&side).unwrap()).unwrap();
    assert_eq!(meta["format_version"], 1);
    assert_eq!(meta["member_pixels"], g.member_count());
}

#[test]
fn member_pixels_sit_where_the_escape_test_says() {
    let g = render_m1_overlay(
        &RenderConfig {
            lamination_depth: None,
            shade_wake: false,
            ..small_m1()
        },
        &generate(0).unwrap(),
        &RayOptions::default(),
    )
    .unwrap();
    assert!(g.cell_at(Complex64::new(-1.0, 0.0)).unwrap().status == lamin_mate::dynamics::EscapeStatus::Member);
    assert!(g.cell_at(Complex64::new(1.0, 1.0)).unwrap().status == lamin_mate::dynamics::EscapeStatus::Escaped);
}

#[test]
fn disk_svg() {
    let d = render_lamination_disk(&generate(3).unwrap(), 3).unwrap();
    assert_eq!(d.chords.len(), 16);
    assert!(d.svg.starts_with("<svg") || d.svg.starts_with("<?xml"));
    assert!(d.svg.contains("data-format-version"));
    assert_eq!(d.svg.matches("<path").count(), 16);
    assert!(render_lamination_disk(&generate(3).unwrap(), 4).is_err());
}
