"""Idempotent notification outbox with pluggable delivery channels.

At most one non-Failed notification ever exists per idempotency key, no
matter how often enqueue is re-run. Failed notifications may be re-queued
exactly once, by explicit request.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

from .errors import AdapterUnavailable, NotAnAppeal
from .model import CaseRecord
from .scheduler import HearingAssignment


class Role(str, Enum):
    JUDGE = "Judge"
    LAWYER = "Lawyer"
    LITIGANT = "Litigant"


class Channel(str, Enum):
    CONSOLE = "Console"
    FILE = "File"
    SMS = "SMS"
    EMAIL = "Email"


class Status(str, Enum):
    QUEUED = "Queued"
    DELIVERED = "Delivered"
    FAILED = "Failed"


DEFAULT_RECIPIENTS = (Role.JUDGE, Role.LAWYER, Role.LITIGANT)


@dataclass
class Notification:
    notification_id: str
    case_id: str
    recipient_role: Role
    channel: Channel
    payload: str
    idempotency_key: str
    status: Status = Status.QUEUED
    failure_reason: Optional[str] = None
    retried: bool = False

    def to_dict(self) -> dict:
        return {
            "notification_id": self.notification_id,
            "case_id": self.case_id,
            "recipient_role": self.recipient_role.value,
            "channel": self.channel.value,
            "payload": self.payload,
            "idempotency_key": self.idempotency_key,
            "status": self.status.value,
        }


def _key(*parts: str) -> str:
    return hashlib.sha256("|".join(parts).encode()).hexdigest()


class ConsoleAdapter:
    channel = Channel.CONSOLE

    def deliver(self, notification: Notification) -> None:
        print(f"[notify] {notification.recipient_role.value}: {notification.payload}")


class FileAdapter:
    """Appends human-readable lines "DATE case_id role payload"."""

    channel = Channel.FILE

    def __init__(self, path="outbox.log"):
        self.path = str(path)

    def deliver(self, notification: Notification) -> None:
        date_part = notification.payload.split()[-1]
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(
                f"{date_part} {notification.case_id} "
                f"{notification.recipient_role.value} {notification.payload}\n"
            )


class NullAdapter:
    """Counts deliveries without I/O; used by the simulator."""

    channel = Channel.CONSOLE

    def __init__(self):
        self.delivered = 0

    def deliver(self, notification: Notification) -> None:
        self.delivered += 1


class SmsAdapter:
    """Gateway stub; a real integration is out of scope at desk scale."""

    channel = Channel.SMS

    def deliver(self, notification: Notification) -> None:
        raise AdapterUnavailable("no SMS gateway configured")


class EmailAdapter:
    """Gateway stub; a real integration is out of scope at desk scale."""

    channel = Channel.EMAIL

    def deliver(self, notification: Notification) -> None:
        raise AdapterUnavailable("no email gateway configured")


class Outbox:
    def __init__(self):
        self._notifications: list[Notification] = []
        self._queued: list[Notification] = []
        self._live_keys: set[str] = set()
        self._counter = 0

    def __len__(self):
        return len(self._notifications)

    def all(self) -> list[Notification]:
        return list(self._notifications)

    def _new(self, case_id: str, role: Role, channel: Channel, payload: str, key: str) -> Optional[Notification]:
        if key in self._live_keys:
            return None
        self._counter += 1
        n = Notification(
            notification_id=f"N{self._counter:06d}",
            case_id=case_id,
            recipient_role=role,
            channel=channel,
            payload=payload,
            idempotency_key=key,
        )
        self._notifications.append(n)
        self._queued.append(n)
        self._live_keys.add(key)
        return n

    def enqueue_for_assignment(
        self,
        assignment: HearingAssignment,
        recipients: Iterable[Role] = DEFAULT_RECIPIENTS,
        channel: Channel = Channel.CONSOLE,
    ) -> list[Notification]:
        """One Queued notification per role; known keys silently skipped."""
        created = []
        payload = f"Hearing for case {assignment.case_id} scheduled on {assignment.date.isoformat()}"
        for role in recipients:
            key = _key(assignment.case_id, assignment.date.isoformat(), role.value)
            n = self._new(assignment.case_id, role, channel, payload, key)
            if n is not None:
                created.append(n)
        return created

    def appeal_notice(
        self, appeal_case: CaseRecord, higher_court_id: str, channel: Channel = Channel.CONSOLE
    ) -> Optional[Notification]:
        """Notifies the higher court; payload names the originating case."""
        if appeal_case.appeal_of is None:
            raise NotAnAppeal(appeal_case.case_id)
        payload = (
            f"Appeal {appeal_case.case_id} of case {appeal_case.appeal_of} "
            f"filed with higher court {higher_court_id}"
        )
        key = _key("appeal", appeal_case.case_id, appeal_case.appeal_of, higher_court_id)
        return self._new(appeal_case.case_id, Role.JUDGE, channel, payload, key)

    def drain(self, adapter) -> tuple[int, int]:
        """Attempt delivery of everything Queued; returns (delivered, failed)."""
        delivered = failed = 0
        pending, self._queued = self._queued, []
        for n in pending:
            if n.status is not Status.QUEUED:
                continue
            try:
                adapter.deliver(n)
            except AdapterUnavailable:
                # leave everything still queued for a later drain
                self._queued = [m for m in pending if m.status is Status.QUEUED]
                raise
            except Exception as exc:
                n.status = Status.FAILED
                n.failure_reason = str(exc)
                self._live_keys.discard(n.idempotency_key)
                failed += 1
            else:
                n.status = Status.DELIVERED
                delivered += 1
        return delivered, failed

    def retry_failed(self) -> int:
        """Re-queue each Failed notification at most once."""
        retried = 0
        for n in self._notifications:
            if n.status is Status.FAILED and not n.retried:
                if n.idempotency_key in self._live_keys:
                    continue  # a fresh enqueue already took over this key
                n.status = Status.QUEUED
                n.retried = True
                n.failure_reason = None
                self._live_keys.add(n.idempotency_key)
                self._queued.append(n)
                retried += 1
        return retried
