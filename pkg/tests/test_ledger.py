from lcpkit.ledger import NullLedger, SpaceLedger, ensure


def test_hold_release_and_peak():
    led = SpaceLedger()
    led.hold("a", 100)
    led.hold("b", 50)
    led.release("a")
    led.hold("c", 10)
    assert led.current == 60
    assert led.peak == 150


def test_rehold_replaces_size():
    led = SpaceLedger()
    led.hold("a", 100)
    led.hold("a", 40)
    assert led.current == 40 and led.peak == 100


def test_window_tracks_its_own_peak():
    led = SpaceLedger()
    led.hold("big", 1000)
    led.release("big")
    led.hold("text", 10)
    with led.window("w"):
        led.hold("x", 5)
        led.release("x")
    led.hold("y", 500)
    assert led.report() == {"peak": 1000, "peak[w]": 15}


def test_null_ledger():
    assert isinstance(ensure(None), NullLedger)
    led = SpaceLedger()
    assert ensure(led) is led
    nl = NullLedger()
    nl.hold("a", 10)
    assert nl.peak == 0
