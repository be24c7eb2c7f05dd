from django.test import SimpleTestCase

from bgp.state import (
    UNREACHABLE, StateMatchOperator, StateMismatchError, build_state_series, decode_state,
    detect_state_periodicity, encode_state, peer_state_series, required_agreement, seed_before, state_match,
    window_state_series,
)
from bgp.swaps import adjacent_pairs, detect_as_swap, swapped_pairs
from bgp.updates import BgpUpdate, UpdateKind
from detector.pipeline import detect

PREFIX = '10.0.0.0/24'


def announce(ts, peer, *path):
    return BgpUpdate(ts, peer, PREFIX, UpdateKind.ANNOUNCE, path)


def withdraw(ts, peer):
    return BgpUpdate(ts, peer, PREFIX, UpdateKind.WITHDRAW)


def vector(peers, equal):
    a = tuple((f'p{k}', (1, 2)) for k in range(peers))
    b = tuple((f'p{k}', (1, 2) if k < equal else (1, 3)) for k in range(peers))
    return a, b


def alternating(peers=10, half=450, hours=2, step=15):
    """Peer p0 alternates two paths every ``half`` seconds; the others never move."""
    first = (56730, 51945, 2914, 1299, 64500)
    second = (56730, 51945, 1299, 2914, 64500)
    updates = [announce(0, f'p{k}', 3333, 64500) for k in range(1, peers)]
    for n, ts in enumerate(range(0, hours * 3600, half)):
        updates.append(announce(ts, 'p0', *(first if n % 2 == 0 else second)))
    return build_state_series(updates, t0=0, t1=hours * 3600, step=step)


class EncodingTests(SimpleTestCase):

    def test_canonical_bytes(self):
        state = (('a', (1, 2)), ('b', UNREACHABLE))
        self.assertEqual(encode_state(state), b'a=1-2;b=!')
        self.assertEqual(decode_state(encode_state(state)), state)


class StateMatchTests(SimpleTestCase):

    def test_five_percent_rule(self):
        self.assertEqual(state_match(*vector(100, 96)), 1)
        self.assertEqual(state_match(*vector(100, 95)), 1)
        self.assertEqual(state_match(*vector(100, 94)), 0)

    def test_identical(self):
        a, _ = vector(7, 7)
        self.assertEqual(state_match(a, a), 1)

    def test_unreachable_equals_only_itself(self):
        a = (('p0', UNREACHABLE),)
        b = (('p0', (1,)),)
        self.assertEqual(state_match(a, a, 1.0), 1)
        self.assertEqual(state_match(a, b, 0.5), 0)

    def test_symmetric(self):
        a, b = vector(40, 38)
        self.assertEqual(state_match(a, b), state_match(b, a))

    def test_strict_threshold(self):
        self.assertEqual(state_match(*vector(100, 99), threshold=1.0), 0)
        self.assertEqual(required_agreement(0.95, 20), 19)

    def test_mismatched_peers(self):
        with self.assertRaises(StateMismatchError):
            state_match((('a', (1,)),), (('b', (1,)),))

    def test_operator_matrix(self):
        peers = [f'p{k:02d}' for k in range(20)]
        updates = [announce(0, peer, 1) for peer in peers] + [announce(1, 'p00', 2), announce(2, 'p01', 2)]
        states = build_state_series(updates, t0=0, t1=3)
        relaxed = StateMatchOperator(0.95, states.series.table)
        self.assertEqual(relaxed.matrix(states.series).tolist(), [
            [True, True, False],
            [True, True, True],
            [False, True, True],
        ])
        self.assertEqual(relaxed(0, 1), 1)
        self.assertEqual(relaxed(0, 2), 0)
        self.assertEqual(relaxed(0, None), 0)
        strict = StateMatchOperator(1.0, states.series.table)
        self.assertEqual(strict.matrix(states.series).tolist(), [
            [True, False, False],
            [False, True, False],
            [False, False, True],
        ])
        with self.assertRaises(ValueError):
            StateMatchOperator(0)


class BuildStateSeriesTests(SimpleTestCase):

    def test_single_transition(self):
        states = build_state_series([announce(5, 'p0', 7, 8)], t0=0, t1=10)
        raw = states.series.raw_slots()
        self.assertEqual(raw[:5], (b'p0=!',) * 5)
        self.assertEqual(raw[5:], (b'p0=7-8',) * 5)
        self.assertEqual(states.timelines['p0'], [(0, UNREACHABLE), (5, (7, 8))])

    def test_no_updates(self):
        peers = [f'p{k}' for k in range(100)]
        states = build_state_series([], peers=peers, t0=0, t1=60)
        self.assertEqual(len(states.series.table), 1)
        self.assertEqual(len(set(states.series.slots)), 1)

    def test_last_update_within_a_second_wins(self):
        states = build_state_series([announce(3, 'a', 1), announce(3, 'a', 2)], t0=0, t1=5)
        self.assertEqual(states.series.raw(3), b'a=2')

    def test_replay_is_order_independent_across_peers(self):
        updates = [announce(2, 'a', 1), announce(2, 'b', 5), withdraw(4, 'a'), announce(4, 'b', 6)]
        permuted = [updates[1], updates[0], updates[3], updates[2]]
        one = build_state_series(updates, t0=0, t1=8)
        two = build_state_series(permuted, t0=0, t1=8)
        self.assertEqual(one.series.raw_slots(), two.series.raw_slots())

    def test_equal_states_share_a_symbol(self):
        updates = [announce(1, 'a', 1), withdraw(2, 'a'), announce(3, 'a', 1)]
        states = build_state_series(updates, t0=0, t1=5)
        self.assertEqual(states.series.slots[1], states.series.slots[3])
        self.assertEqual(states.series.slots[0], states.series.slots[2])

    def test_out_of_window_updates_are_dropped(self):
        states = build_state_series([announce(-1, 'a', 1), announce(20, 'a', 2), announce(1, 'a', 3)], t0=0, t1=5)
        self.assertEqual(states.dropped, 2)
        self.assertEqual(len(states.series.table), 2)

    def test_seed_state(self):
        states = build_state_series([], peers=['a'], t0=0, t1=2, seed={'a': (4, 5)})
        self.assertEqual(states.series.raw(0), b'a=4-5')

    def test_coarser_step(self):
        states = build_state_series([announce(90, 'a', 1)], t0=0, t1=300, step=60)
        self.assertEqual(states.series.raw_slots(), (b'a=!', b'a=!', b'a=1', b'a=1', b'a=1'))

    def test_peer_state_series(self):
        states = build_state_series([announce(1, 'a', 1), announce(2, 'b', 2)], t0=0, t1=4)
        series = peer_state_series(states, 'b')
        self.assertEqual(series.raw_slots(), (b'!', b'!', b'2', b'2'))
        with self.assertRaises(StateMismatchError):
            peer_state_series(states, 'z')


class StatePeriodicityTests(SimpleTestCase):

    def setUp(self):
        self.states = alternating()

    def test_alternation_at_one_peer(self):
        [periodicity] = detect_state_periodicity(self.states)
        self.assertEqual(periodicity.period_slots * self.states.step, 900)
        self.assertEqual(periodicity.distinct_values(), 2)

    def test_strict_threshold_is_the_plain_detector(self):
        self.assertEqual(detect_state_periodicity(self.states, threshold=1.0), detect(self.states.series))

    def test_one_peer_in_twenty_is_tolerated(self):
        self.assertEqual(detect_state_periodicity(alternating(peers=20)), [])

    def test_dispute_reel_signature(self):
        [periodicity] = detect_state_periodicity(self.states)
        swaps = detect_as_swap(self.states, periodicity)
        self.assertEqual([(s.peer, s.first_as, s.second_as) for s in swaps], [('p0', 1299, 2914)])


class SwapTests(SimpleTestCase):

    def test_identical_paths(self):
        self.assertEqual(swapped_pairs([(1, 2, 3), (1, 2, 3)]), set())

    def test_length_only(self):
        self.assertEqual(swapped_pairs([(1, 2, 3), (1, 2, 2, 3), (1, 3)]), set())

    def test_prepending_is_collapsed(self):
        self.assertEqual(adjacent_pairs((1, 1, 2)), {(1, 2)})


class WindowStateSeriesTests(SimpleTestCase):

    def setUp(self):
        self.updates = [announce(0, 'a', 1, 2), announce(0, 'b', 3, 2), announce(550, 'b', 4, 2)]

    def test_earlier_updates_seed_the_window(self):
        states = window_state_series(self.updates, 100, 1000, step=100)
        raw = states.series.raw_slots()
        self.assertEqual(len(raw), 9)
        self.assertEqual(raw[0], b'a=1-2;b=3-2')
        self.assertEqual(raw[5], b'a=1-2;b=4-2')
        self.assertEqual(states.dropped, 0)
        self.assertEqual(states.timelines['a'], [(100, (1, 2))])

    def test_peer_withdrawn_before_the_window(self):
        updates = self.updates + [withdraw(50, 'c')]
        states = window_state_series(updates, 100, 1000, step=100)
        self.assertEqual(states.peers, ('a', 'b', 'c'))
        self.assertEqual(states.series.raw(0), b'a=1-2;b=3-2;c=!')

    def test_seed_keeps_the_last_update_of_each_peer(self):
        updates = [
            announce(10, 'a', 1), withdraw(20, 'a'), announce(5, 'b', 2), announce(30, 'a', 3), announce(40, 'b', 9),
        ]
        self.assertEqual(seed_before(updates, 40), {'a': (3,), 'b': (2,)})
        self.assertEqual(seed_before(updates, 25), {'a': UNREACHABLE, 'b': (2,)})
