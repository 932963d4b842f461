"""Smoke test for the dgla_holonomy extension module."""

import json

import dgla_holonomy as dh


def main():
    model = dh.Model.catalog("h3")
    assert model.nilpotency_class == 2 and model.lower_central_class() == 2
    assert len(model) == 12 and model.dim(0) == 6, repr(model)
    assert dh.Model.from_json(model.to_json()).to_json() == model.to_json()

    sigma = dh.generate(model, 2, seed=5, degree=2)
    assert sigma.n == 2 and sigma.is_mc(model)
    assert dh.Sigma.from_json(model, sigma.to_json()).to_json() == sigma.to_json()

    nerve = dh.integrate(model, sigma)
    assert nerve.n == 2
    assert nerve.validate(model) == []
    assert dh.Nerve.from_json(nerve.to_json()).to_json() == nerve.to_json()

    # exp(X) exp(Y) = exp(X + Y + [X, Y]/2) in the Heisenberg algebra
    assert dh.bch("h3", ["1", "0", "0"], ["0", "1", "0"]) == ["1", "1", "1/2"]

    assert set(dh.list_checks()) >= {"green", "cocycle", "central"}
    report = dh.verify("green", seed=7, count=2, degree=1)
    assert report.passed and report.instances == 2, str(report)
    assert json.loads(report.to_json())["seed"] == 7
    assert dh.VerificationReport.from_json(report.to_json()).to_json() == report.to_json()

    try:
        dh.verify("no-such-check")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown check accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
