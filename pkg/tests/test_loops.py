# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2

import os
import time
import unittest
import threading
from concurrent.futures import Future, ThreadPoolExecutor

from cssdh.loops import inline_runner, to_thread
from cssdh.schema import shipped_schema
from cssdh.cq import load_suite, run_suite


SUITE = os.path.join(os.path.dirname(os.path.dirname(__file__)), "cq")


def fails():
    raise ValueError("boom")


class InlineRunnerTest(unittest.TestCase):

    def test_returns_settled_future(self):
        fut = inline_runner(lambda: 1)
        self.assertTrue(fut.done())
        self.assertEqual(fut.result(), 1)

    def test_runs_in_the_calling_thread(self):
        self.assertEqual(inline_runner(threading.get_ident).result(), threading.get_ident())

    def test_captures_exceptions(self):
        self.assertIsInstance(inline_runner(fails).exception(), ValueError)


class ToThreadTest(unittest.TestCase):

    def test_runs_elsewhere(self):
        fut = to_thread(threading.get_ident)
        self.assertNotEqual(fut.result(timeout=1), threading.get_ident())

    def test_propagates_exceptions(self):
        with self.assertRaises(ValueError):
            to_thread(fails).result(timeout=1)


class SuiteRunnerTest(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.schema = shipped_schema()
        cls.suite = load_suite(SUITE)

    def test_runner_gets_one_call_per_case(self):
        calls = []

        def recording(func):
            calls.append(func)
            return inline_runner(func)

        results = run_suite(self.suite, self.schema, runner=recording)
        self.assertEqual(len(calls), len(self.suite))
        self.assertTrue(all(result.passed for result in results))

    def test_cases_overlap_on_threads(self):
        # Each case only proceeds once every case has started.
        barrier = threading.Barrier(len(self.suite), timeout=5)

        def gated(func):
            def run():
                barrier.wait()
                return func()
            return to_thread(run)

        results = run_suite(self.suite, self.schema, runner=gated)
        self.assertTrue(all(result.passed for result in results))

    def test_results_keep_suite_order(self):
        delays = iter(reversed(range(len(self.suite))))

        def later_first(func):
            delay = 0.02 * next(delays)

            def run():
                time.sleep(delay)
                return func()
            return to_thread(run)

        results = run_suite(self.suite, self.schema, runner=later_first)
        self.assertEqual([result.id for result in results], [case.id for case in self.suite])
        self.assertEqual(results, run_suite(self.suite, self.schema))

    def test_executor_submit_is_a_runner(self):
        with ThreadPoolExecutor(max_workers=2) as pool:
            results = run_suite(self.suite, self.schema, runner=pool.submit)
        self.assertEqual(results, run_suite(self.suite, self.schema))

    def test_runner_failures_propagate(self):
        def broken(func):
            fut = Future()
            fut.set_exception(RuntimeError("no workers"))
            return fut

        with self.assertRaises(RuntimeError):
            run_suite(self.suite, self.schema, runner=broken)
