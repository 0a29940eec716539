use std::io::Write;

use proptest::prelude::*;

use qimg::neqr::{all_bitplane_covers, decode_image, ideal_map, load_image, NeqrImage};
use qimg::verify::{esop_eval, Assignment};
use qimg::Error;

fn write_tmp(bytes: &[u8]) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(bytes).unwrap();
    f
}

#[test]
fn ascii_pgm_pads_to_powers_of_two() {
    let f = write_tmp(b"P2\n# a comment\n3 2\n255\n1 2 3\n4 5 6\n");
    let img = load_image(f.path()).unwrap();
    assert_eq!(
        (img.rows(), img.cols(), img.h(), img.w(), img.channels()),
        (2, 3, 1, 2, 1)
    );
    assert_eq!(img.pixels(), &[1, 2, 3, 0, 4, 5, 6, 0]);
}

#[test]
fn binary_pgm_and_ppm() {
    let mut p5 = b"P5 2 2 255\n".to_vec();
    p5.extend([10, 20, 30, 40]);
    let img = decode_image(&p5).unwrap();
    assert_eq!(img.pixels(), &[10, 20, 30, 40]);

    let mut p6 = b"P6 1 1 255\n".to_vec();
    p6.extend([7, 8, 9]);
    let img = decode_image(&p6).unwrap();
    assert_eq!((img.channels(), img.value(0, 0, 2)), (3, 9));
}

#[test]
fn ascii_ppm() {
    let img = decode_image(b"P3\n2 1\n255\n1 2 3 4 5 6\n").unwrap();
    assert_eq!((img.h(), img.w()), (0, 1));
    assert_eq!(img.pixels(), &[1, 2, 3, 4, 5, 6]);
}

#[test]
fn png_round_trip() {
    let raw = image::GrayImage::from_raw(3, 3, (0..9).map(|v| v * 20).collect()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.png");
    raw.save(&path).unwrap();
    let img = load_image(&path).unwrap();
    assert_eq!((img.h(), img.w()), (2, 2));
    assert_eq!(img.value(2, 2, 0), 160);
    assert_eq!(img.value(3, 3, 0), 0);
}

#[test]
fn sixteen_bit_and_odd_maxval_are_rejected() {
    assert!(matches!(
        decode_image(b"P2 1 1 65535\n1000\n"),
        Err(Error::UnsupportedImage(_))
    ));
    assert!(matches!(
        decode_image(b"P2 1 1 15\n3\n"),
        Err(Error::UnsupportedImage(_))
    ));
}

#[test]
fn missing_and_garbage_files() {
    assert!(matches!(load_image("/nonexistent/x.pgm"), Err(Error::ImageRead { .. })));
    let f = write_tmp(b"not an image");
    assert!(load_image(f.path()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Each pixel value is recovered from the bitplane covers.
    #[test]
    fn covers_reconstruct_image(
        (h, w, ch) in (0usize..=3, 0usize..=3, prop_oneof![Just(1usize), Just(3)]),
        seed in any::<u64>(),
    ) {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let img = NeqrImage::random(h, w, 8, ch, &mut rng).unwrap();
        let covers = all_bitplane_covers(&img);
        prop_assert_eq!(covers.len(), 8 * ch);
        let ideal = ideal_map(&img);
        for (p, values) in ideal.iter() {
            let a = Assignment::from_index(h + w, p as u64);
            for (c, &want) in values.iter().enumerate() {
                let mut v = 0u16;
                for cl in covers.iter().filter(|cl| cl.channel == c) {
                    if esop_eval(&cl.cover, &a).unwrap() {
                        v |= 1 << (7 - cl.bit);
                    }
                }
                prop_assert_eq!(v, want);
            }
        }
        let minterms: usize = covers.iter().map(|c| c.cover.len()).sum();
        prop_assert_eq!(minterms, img.popcount());
    }
}
