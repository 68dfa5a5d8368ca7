# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2
"""
cssdh.loops decides where competency questions run.

A runner is a callable that takes a zero-argument function and returns
a concurrent.futures.Future for its result:

    >>> results = run_suite(suite, schema, runner=inline_runner)
    >>> results = run_suite(suite, schema, runner=to_thread)

inline_runner runs the function immediately. to_thread starts one
worker thread per call. Any other callable with the same shape works,
for example the submit method of an executor.
"""
import threading
import typing as t
from concurrent.futures import Future


T = t.TypeVar("T")
Runner = t.Callable[[t.Callable[[], T]], "Future[T]"]


__all__ = ["Runner", "inline_runner", "to_thread"]


def _resolve(future: "Future[T]", func: t.Callable[[], T]) -> None:
    if not future.set_running_or_notify_cancel():
        return
    try:
        result = func()
    except BaseException as e:
        future.set_exception(e)
    else:
        future.set_result(result)


def inline_runner(func: t.Callable[[], T]) -> "Future[T]":
    """
    Runs the function right away and returns its settled future.
    """
    fut: Future[T] = Future()
    _resolve(fut, func)
    return fut


def to_thread(func: t.Callable[[], T]) -> "Future[T]":
    """
    Runs the function in a new daemon thread.
    """
    fut: Future[T] = Future()
    threading.Thread(target=_resolve, args=(fut, func), daemon=True).start()
    return fut
