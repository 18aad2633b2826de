from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field
from typing import Iterable, Optional


@dataclass(order=True)
class Task:
    priority: int
    title: str = field(compare=False)
    due: Optional[dt.date] = field(default=None, compare=False)
    done: bool = field(default=False, compare=False)
    tags: set = field(default_factory=set, compare=False)

    def overdue(self, today: dt.date) -> bool:
        return not self.done and self.due is not None and self.due < today


class TodoList:
    def __init__(self, tasks: Iterable[Task] = ()):
        self.tasks = list(tasks)

    def add(self, title: str, priority: int = 3, **extra) -> Task:
        task = Task(priority, title, **extra)
        self.tasks.append(task)
        return task

    def complete(self, title: str) -> None:
        for task in self.tasks:
            if task.title == title:
                task.done = True
                return
        raise LookupError(title)

    def pending(self):
        return sorted(t for t in self.tasks if not t.done)

    def by_tag(self):
        index = {}
        for task in self.tasks:
            for tag in task.tags:
                index.setdefault(tag, []).append(task.title)
        return {tag: sorted(titles) for tag, titles in sorted(index.items())}

    def render(self, today: dt.date) -> str:
        lines = []
        for task in self.pending():
            flag = "!" if task.overdue(today) else " "
            due = task.due.isoformat() if task.due else "-"
            lines.append(f"{flag} [{task.priority}] {task.title:<20} {due}")
        return "\n".join(lines)
