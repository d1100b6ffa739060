use std::path::PathBuf;

use multifilter::image2d::container::{read_pyramid, write_pyramid};
use multifilter::imageio::fits::{read_fits, FitsError};
use multifilter::imageio::pgm::{read_pgm, write_pgm};
use multifilter::imageio::read_image;
use multifilter::{decompose2d, reconstruct2d, Error, Peak, Wavelet};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

#[test]
fn minimal_fixture() {
    let img = read_fits(fixture("minimal_2x2.fits")).unwrap();
    assert_eq!((img.width(), img.height()), (2, 2));
    assert_eq!(img.samples(), &[0.0, 1.0, 2.0, 3.0]);
    assert_eq!(img.peak(), Peak::Sixteen);
}

#[test]
fn bzero_maps_to_unsigned() {
    let img = read_fits(fixture("bzero_u16.fits")).unwrap();
    assert_eq!(img.samples(), &[0.0, 1.0, 32768.0, 65535.0]);
}

#[test]
fn bitpix32_rejected() {
    match read_fits(fixture("bitpix32.fits")) {
        Err(Error::Fits(FitsError::UnsupportedBitpix(32))) => {}
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn format_sniffing() {
    let fits = read_image(fixture("plate_16x16.fits")).unwrap();
    assert_eq!((fits.width(), fits.height()), (16, 16));
    let dir = tempfile::tempdir().unwrap();
    let pgm = dir.path().join("plate.pgm");
    assert_eq!(write_pgm(&fits, &pgm).unwrap().clamped, 0);
    assert_eq!(read_image(&pgm).unwrap(), fits);
    assert_eq!(read_pgm(&pgm).unwrap().peak(), Peak::Sixteen);
}

#[test]
fn pyramid_file_roundtrip() {
    let img = read_fits(fixture("plate_16x16.fits")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    for w in Wavelet::all() {
        let pyr = decompose2d(&img, &w, 1).unwrap();
        let path = dir.path().join(format!("{}.mfp", w.name()));
        write_pyramid(&pyr, &path).unwrap();
        let back = read_pyramid(&path).unwrap();
        assert_eq!(back, pyr);
        let rec = reconstruct2d(&back, &w).unwrap();
        let err = img
            .samples()
            .iter()
            .zip(rec.samples())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-9, "{}: {err}", w.name());
    }
}

#[test]
fn missing_file_is_io_error() {
    assert!(matches!(
        read_image(fixture("absent.fits")),
        Err(Error::Io(_))
    ));
}
