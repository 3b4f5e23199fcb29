# modules/core/parallel.py
"""
多线程执行器

网格点与验证试验彼此独立，按索引并发执行后再按索引排序合并，
保证输出顺序与调度无关。
"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Any, Callable, Iterable, List, Optional

from tqdm import tqdm

from .exceptions import QDBoundsError


@dataclass
class TaskResult:
    """单个任务结果"""
    index: int
    success: bool
    data: Any = None
    error: Optional[str] = None


class ParallelRunner:
    """基于 ThreadPoolExecutor 的有序并发执行器"""

    def __init__(self, max_workers: Optional[int] = None, show_progress: bool = False, description: str = ""):
        if max_workers is None or max_workers <= 0:
            max_workers = min(8, max(2, os.cpu_count() or 2))
        self.max_workers = max_workers
        self.show_progress = show_progress
        self.description = description
        self.logger = logging.getLogger(self.__class__.__name__)

    def _run_one(self, func: Callable[[Any], Any], index: int, item: Any) -> TaskResult:
        try:
            return TaskResult(index=index, success=True, data=func(item))
        except QDBoundsError as e:
            self.logger.warning(f"Task {index} failed: {e}")
            return TaskResult(index=index, success=False, error=str(e))

    def map(self, func: Callable[[Any], Any], items: Iterable[Any]) -> List[TaskResult]:
        """并发执行 func(item)，返回按索引排序的结果"""
        items = list(items)
        results: List[TaskResult] = []
        if self.max_workers == 1:
            iterator = tqdm(enumerate(items), total=len(items), desc=self.description, disable=not self.show_progress)
            return [self._run_one(func, i, item) for i, item in iterator]

        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            futures = {executor.submit(self._run_one, func, i, item): i for i, item in enumerate(items)}
            with tqdm(total=len(futures), desc=self.description, disable=not self.show_progress) as bar:
                for future in as_completed(futures):
                    results.append(future.result())
                    bar.update(1)

        results.sort(key=lambda r: r.index)
        failed = sum(1 for r in results if not r.success)
        if failed:
            self.logger.warning(f"{failed}/{len(results)} tasks failed")
        return results
