"""User-guidance state machines over a scene's documents.

Three access policies decide what a user may consume next:

* free: everything, always.
* conditional: a document unlocks once its prerequisite set has been
  viewed (an AND over the required ids; documents without prerequisites
  start unlocked). Already-viewed documents stay available.
* sequential: a fixed tour order; only the next unvisited stop unlocks,
  while earlier stops stay open for re-reading.

State is an immutable value; ``record_view`` returns the successor state
and refuses documents the current state does not make available, so any
reachable state is sound by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import TYPE_CHECKING, Mapping

from .errors import DanglingReferenceError, LockedContentError, MisconfiguredGuidanceError
from .validation import Finding

if TYPE_CHECKING:  # pragma: no cover
    from .sceneconfig import Scene


class GuidanceMode(Enum):
    FREE = "free"
    CONDITIONAL = "conditional"
    SEQUENTIAL = "sequential"


@dataclass(frozen=True)
class GuidanceGraph:
    """Prerequisite sets (conditional mode) and tour order (sequential mode)."""

    prerequisites: Mapping[str, frozenset[str]] = field(default_factory=dict)
    order: tuple[str, ...] = ()

    def __post_init__(self):
        normalized = {doc: frozenset(reqs) for doc, reqs in self.prerequisites.items()}
        object.__setattr__(self, "prerequisites", normalized)
        object.__setattr__(self, "order", tuple(self.order))

    def requires(self, document_id: str) -> frozenset[str]:
        return self.prerequisites.get(document_id, frozenset())


@dataclass(frozen=True)
class GuidanceState:
    mode: GuidanceMode
    viewed: frozenset[str] = frozenset()
    scene_ref: str = ""

    def __post_init__(self):
        object.__setattr__(self, "viewed", frozenset(self.viewed))


def new_session(scene: "Scene", mode: GuidanceMode | None = None) -> GuidanceState:
    """Fresh state for ``scene``; ``mode`` defaults to the scene's own."""
    chosen = mode if mode is not None else scene.guidance.mode
    if chosen is GuidanceMode.SEQUENTIAL and not scene.guidance.graph.order:
        raise MisconfiguredGuidanceError(
            f"scene {scene.scene_id!r} declares no tour order for sequential access"
        )
    return GuidanceState(chosen, frozenset(), scene.scene_id)


def available_documents(state: GuidanceState, scene: "Scene") -> frozenset[str]:
    """Ids the user may consume right now (viewed documents stay open)."""
    docs = scene.document_ids
    if state.mode is GuidanceMode.FREE:
        return docs
    graph = scene.guidance.graph
    if state.mode is GuidanceMode.CONDITIONAL:
        unlocked = {d for d in docs if graph.requires(d) <= state.viewed}
        return frozenset(unlocked | (state.viewed & docs))
    # Sequential: viewed is always a prefix of the order, so its length
    # indexes the next stop.
    open_now = set(state.viewed)
    if len(state.viewed) < len(graph.order):
        open_now.add(graph.order[len(state.viewed)])
    return frozenset(open_now)


def record_view(state: GuidanceState, document_id: str, scene: "Scene") -> GuidanceState:
    """Mark a document as viewed; idempotent for already-viewed documents."""
    if document_id not in scene.document_ids:
        raise DanglingReferenceError(f"unknown document {document_id!r}")
    if document_id not in available_documents(state, scene):
        raise LockedContentError(f"document {document_id!r} is locked", document_id)
    return replace(state, viewed=state.viewed | {document_id})


def progress(state: GuidanceState, scene: "Scene") -> float:
    """Viewed fraction of the documents the mode governs; empty scenes are done."""
    if state.mode is GuidanceMode.SEQUENTIAL:
        governed = frozenset(scene.guidance.graph.order) & scene.document_ids
    else:
        governed = scene.document_ids
    if not governed:
        return 1.0
    return len(state.viewed & governed) / len(governed)


def simulate_exhaustion(scene: "Scene", mode: GuidanceMode | None = None) -> frozenset[str]:
    """Greedily view every document that ever becomes available.

    Returns the set of documents reachable under the given (or declared)
    mode; a fully consumable scene returns all its document ids.
    """
    chosen = mode if mode is not None else scene.guidance.mode
    docs = scene.document_ids
    graph = scene.guidance.graph
    if chosen is GuidanceMode.FREE:
        return docs
    if chosen is GuidanceMode.CONDITIONAL:
        viewed: set[str] = set()
        while True:
            newly = {d for d in docs if d not in viewed and graph.requires(d) <= viewed}
            if not newly:
                return frozenset(viewed)
            viewed |= newly
    # Sequential: walk the order until it breaks (unknown id or repeat).
    viewed_list: list[str] = []
    seen: set[str] = set()
    for doc in graph.order:
        if doc not in docs or doc in seen:
            break
        viewed_list.append(doc)
        seen.add(doc)
    return frozenset(seen)


def _cycle_members(prerequisites: Mapping[str, frozenset[str]], docs: frozenset[str]) -> list[str]:
    # A document is on a cycle if it can reach itself through prerequisite
    # edges. Scenes are small, so a per-node DFS is plenty.
    graph = {d: [r for r in prerequisites.get(d, ()) if r in docs] for d in docs}
    members = []
    for start in sorted(docs):
        stack = list(graph[start])
        visited: set[str] = set()
        while stack:
            node = stack.pop()
            if node == start:
                members.append(start)
                break
            if node in visited:
                continue
            visited.add(node)
            stack.extend(graph[node])
    return members


def validate_guidance_graph(scene: "Scene") -> list[Finding]:
    """Structural and reachability checks for a scene's guidance data.

    Reports prerequisite cycles, dangling references, tour-order
    duplicates/omissions, and documents that can never be viewed under the
    scene's declared mode. An empty report means the whole scene is
    consumable.
    """
    findings: list[Finding] = []
    docs = scene.document_ids
    graph = scene.guidance.graph
    mode = scene.guidance.mode

    for doc in sorted(graph.prerequisites):
        if doc not in docs:
            findings.append(
                Finding(
                    "dangling_reference",
                    doc,
                    "prerequisite entry for a document the scene does not contain",
                )
            )
        for req in sorted(graph.requires(doc)):
            if req not in docs:
                findings.append(
                    Finding(
                        "dangling_reference",
                        doc,
                        f"prerequisite {req!r} is not a document in the scene",
                    )
                )

    seen_in_order: set[str] = set()
    for doc in graph.order:
        if doc not in docs:
            findings.append(
                Finding("dangling_reference", doc, "tour order lists an unknown document")
            )
        if doc in seen_in_order:
            findings.append(
                Finding("order_duplicate", doc, "document appears twice in the tour order")
            )
        seen_in_order.add(doc)
    if mode is GuidanceMode.SEQUENTIAL:
        for doc in sorted(docs - seen_in_order):
            findings.append(
                Finding("order_omission", doc, "document missing from the tour order")
            )

    cycle = _cycle_members(graph.prerequisites, docs)
    if cycle:
        findings.append(
            Finding("cycle", ", ".join(cycle), "prerequisites form a cycle")
        )

    for doc in sorted(docs - simulate_exhaustion(scene, mode)):
        findings.append(
            Finding("unreachable", doc, f"never becomes available in {mode.value} mode")
        )
    return findings
