"""End-to-end smoke checks for the python bindings."""

import sys

import labelguard as lg


def test_codec_round_trip():
    channels = [[0, 2047, -2048, 5], [-1, 1, 100, -100]]
    blob = lg.encode_wfdb_212(channels)
    assert isinstance(blob, bytes) and len(blob) == 12
    assert lg.decode_wfdb_212(blob, 2) == channels


def test_resample():
    assert lg.resample_morphology([0.0, 10.0], 3) == [0.0, 5.0, 10.0]
    assert lg.resample_morphology([0.0, 1.0, 0.0], 5) == [0.0, 0.5, 1.0, 0.5, 0.0]


def test_sample_set_round_trip():
    train, _ = lg.generate_synthetic(classes=3, per_class=10, dims=4,
                                     separation=8.0, seed=1)
    assert len(train) == 30 and train.dim() == 4
    assert set(train.labels) == {"N", "A", "V"}
    assert train.class_counts()["N"] == 10
    train.validate()

    subset = lg.SampleSet()
    subset.x = train.x[:5]
    subset.labels = train.labels[:5]
    subset.ids = train.ids[:5]
    subset.noise_flags = train.noise_flags[:5]
    subset.validate()


def test_classifiers_on_separable_blobs():
    train, test = lg.generate_synthetic(classes=4, per_class=30, dims=5,
                                        separation=12.0, seed=7)
    for kind in ("svm", "c45", "nb", "knn", "lda"):
        model = lg.train_classifier(kind, train)
        assert model.kind == kind and model.dim == 5
        assert lg.accuracy(model, test) > 0.95
        assert model.predict_batch(test.x)[0] == model.predict(test.x[0])


def test_filter_pipeline():
    train, _ = lg.generate_synthetic(classes=4, per_class=40, dims=6,
                                     separation=8.0, seed=3)
    noisy = lg.inject_noise(train, level=0.2, seed=11)
    assert sum(noisy.noise_flags) == 4 * 8
    assert noisy.ids == train.ids

    tally = lg.ensemble_votes(noisy, folds=10, seed=5)
    assert len(tally.ids) == len(noisy) and max(tally.counts) <= 5

    s1, s2, s3 = (lg.apply_standard(tally, s) for s in (1, 2, 3))
    assert set(s1) <= set(s2) <= set(s3)

    report = lg.detection_metrics(s2, noisy)
    assert report.anm == 32
    assert report.ainm <= min(report.anm, report.inm)
    assert report.p_d is not None and report.p_d > 0.5

    cleaned = lg.remove_flagged(noisy, s2)
    assert len(cleaned) == len(noisy) - len(s2)


def test_errors_are_typed():
    try:
        lg.train_classifier("forest", lg.SampleSet())
    except lg.ArgumentError:
        pass
    else:
        raise AssertionError("expected ArgumentError")

    try:
        lg.decode_wfdb_212(b"\x00\x01", 1)
    except lg.DataError:
        pass
    else:
        raise AssertionError("expected DataError")


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"ok {test.__name__}")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())
