use gwops::corpus::{generate_corpus, Profile};

#[test]
fn every_generated_structure_is_valid() {
    let c = generate_corpus(Profile::Full, 16).unwrap();
    for o in &c.objects {
        assert!(o.value.is_valid(), "{}", o.name);
    }
    for x in &c.xmods {
        let r = x.value.validate().unwrap();
        assert!(r.is_valid(), "{}: {r}", x.name);
    }
    for g in &c.groupoids {
        let r = g.value.validate();
        assert!(r.is_valid(), "{}: {r}", g.name);
    }
    for k in &c.cat1s {
        let r = k.value.validate();
        assert!(r.is_valid(), "{}: {r}", k.name);
    }
    eprintln!(
        "objects {} xmods {} groupoids {} cat1 {}",
        c.objects.len(),
        c.xmods.len(),
        c.groupoids.len(),
        c.cat1s.len()
    );
}
