#![no_main]

use libfuzzer_sys::fuzz_target;
use paraunitary::json::{decode_element, decode_matrix, encode_element, to_line};
use paraunitary::GroupElement;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok((space, mat)) = decode_matrix(s, None) else { return };
    if let Ok(phi) = GroupElement::new(&space, mat) {
        let again = decode_element(&to_line(&encode_element(&phi)), None).unwrap();
        assert_eq!(again, phi);
    }
});
