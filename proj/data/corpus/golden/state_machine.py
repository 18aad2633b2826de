import enum


class State(enum.Enum):
    IDLE = "idle"
    RUNNING = "running"
    PAUSED = "paused"
    DONE = "done"


TRANSITIONS = {
    State.IDLE: {"start": State.RUNNING},
    State.RUNNING: {"pause": State.PAUSED, "finish": State.DONE},
    State.PAUSED: {"resume": State.RUNNING, "finish": State.DONE}
}


class InvalidTransition(Exception):
    def __init__(self, state, event):
        super().__init__(f"cannot {event!r} while {state.value}")
        self.state = state
        self.event = event


class Machine:
    def __init__(self):
        self.state = State.IDLE
        self.log = []
        self._listeners = []

    def on_change(self, callback):
        self._listeners.append(callback)
        return callback

    def fire(self, event):
        target = TRANSITIONS.get(self.state, {}).get(event)
        if target is None:
            raise InvalidTransition(self.state, event)
        previous, self.state = self.state, target
        self.log.append((previous, event, target))
        for callback in self._listeners:
            callback(previous, target)
        return target

    @property
    def finished(self):
        return self.state is State.DONE
