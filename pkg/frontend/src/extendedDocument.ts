/**
 * Three-window interaction for extended documents:
 *
 *  - navigator: the document list with titles, reference dates, and a
 *    filter bar (title substring, inclusive date range, tags, kinds);
 *  - inspector: metadata preview of the selected document so the user can
 *    check it is the right one before committing;
 *  - visualization: flies the camera to the entity's configured pose and
 *    superimposes the media with an opacity slider.
 *
 * Filtering and chronology mirror the service's semantics exactly:
 * title matching is case-insensitive, the date range applies to the
 * reference date (undated documents drop out), tags must all be carried,
 * kinds is a membership test, and sorting is stable with undated last.
 */

import { CameraTravel, planTravel, type TravelPlan } from "./camera.js";
import type {
  CameraPoseJson,
  DocumentJson,
  ExtendedDocumentJson,
  MediaKind,
} from "./types.js";

export const OVERLAY_KINDS: ReadonlySet<MediaKind> = new Set([
  "image",
  "animated_image",
  "video",
]);

export interface NavigatorFilter {
  titleSubstring?: string;
  dateRange?: [string, string]; // inclusive ISO dates
  tags?: string[];
  kinds?: MediaKind[];
}

export function matchesFilter(doc: DocumentJson, filter: NavigatorFilter): boolean {
  if (
    filter.titleSubstring !== undefined &&
    !doc.title.toLowerCase().includes(filter.titleSubstring.toLowerCase())
  ) {
    return false;
  }
  if (filter.dateRange !== undefined) {
    if (doc.reference_date === undefined) return false;
    const [lo, hi] = filter.dateRange;
    if (doc.reference_date < lo || doc.reference_date > hi) return false;
  }
  if (filter.tags !== undefined && !filter.tags.every((t) => doc.tags.includes(t))) {
    return false;
  }
  if (filter.kinds !== undefined && !filter.kinds.includes(doc.kind)) {
    return false;
  }
  return true;
}

export function filterDocuments(docs: DocumentJson[], filter: NavigatorFilter): DocumentJson[] {
  return docs.filter((d) => matchesFilter(d, filter));
}

/** Stable ascending sort by reference date; undated documents go last. */
export function sortByReferenceDate(docs: DocumentJson[]): DocumentJson[] {
  return docs
    .map((doc, index) => ({ doc, index }))
    .sort((a, b) => {
      const da = a.doc.reference_date;
      const db = b.doc.reference_date;
      if (da === undefined && db === undefined) return a.index - b.index;
      if (da === undefined) return 1;
      if (db === undefined) return -1;
      if (da < db) return -1;
      if (da > db) return 1;
      return a.index - b.index;
    })
    .map((x) => x.doc);
}

export interface InspectorView {
  documentId: string;
  title: string;
  description: string;
  source: string;
  provenanceSource: string;
  publicationDate?: string;
  referenceDate?: string;
  /** Visualization is disabled for media that cannot overlay the 3D view. */
  visualizationEnabled: boolean;
  unsupportedNotice?: string;
}

export function inspectorView(doc: DocumentJson): InspectorView {
  const supported = OVERLAY_KINDS.has(doc.kind);
  return {
    documentId: doc.id,
    title: doc.title,
    description: doc.description,
    source: doc.source,
    provenanceSource: doc.provenance_source,
    publicationDate: doc.publication_date,
    referenceDate: doc.reference_date,
    visualizationEnabled: supported,
    unsupportedNotice: supported
      ? undefined
      : `${doc.kind} media cannot be superimposed on the 3D view`,
  };
}

export type VisualizationPhase = "idle" | "travelling" | "showing";

export interface VisualizationState {
  phase: VisualizationPhase;
  documentId?: string;
  opacity: number;
  pose?: CameraPoseJson;
}

/**
 * Drives the visualization window: engage() starts the camera travel,
 * tick() advances it, and the opacity slider works once the overlay shows.
 */
export class ExtendedDocumentController {
  private travel?: CameraTravel;
  private state: VisualizationState = { phase: "idle", opacity: 1 };

  constructor(
    private readonly entities: ExtendedDocumentJson[],
    private readonly documents: DocumentJson[],
  ) {}

  /** Entities whose documents the session currently allows. */
  engageableEntities(available: ReadonlySet<string>): ExtendedDocumentJson[] {
    return this.entities.filter((e) => available.has(e.document_id));
  }

  /**
   * Start flying toward the entity's pose. Refuses documents the session
   * has not unlocked and media that cannot overlay the view.
   */
  engage(
    entityId: string,
    currentPose: CameraPoseJson,
    available: ReadonlySet<string>,
  ): TravelPlan {
    const entity = this.entities.find((e) => e.entity_id === entityId);
    if (!entity) throw new Error(`unknown extended document entity ${entityId}`);
    if (!available.has(entity.document_id)) {
      throw new Error(`document ${entity.document_id} is locked`);
    }
    const doc = this.documents.find((d) => d.id === entity.document_id);
    if (!doc) throw new Error(`dangling document reference ${entity.document_id}`);
    if (!OVERLAY_KINDS.has(doc.kind)) {
      throw new Error(`${doc.kind} media cannot be superimposed on the 3D view`);
    }
    const plan = planTravel(currentPose, entity.camera);
    this.travel = new CameraTravel(plan);
    this.state = {
      phase: "travelling",
      documentId: entity.document_id,
      opacity: entity.overlay_opacity,
      pose: currentPose,
    };
    return plan;
  }

  /** Advance the travel clock; the overlay appears when the camera arrives. */
  tick(dtSeconds: number): VisualizationState {
    if (this.travel && this.state.phase === "travelling") {
      const phase = this.travel.advance(dtSeconds);
      this.state = {
        ...this.state,
        pose: this.travel.pose(),
        phase: phase === "arrived" ? "showing" : "travelling",
      };
    }
    return this.state;
  }

  setOpacity(alpha: number): VisualizationState {
    if (!Number.isFinite(alpha)) throw new Error(`opacity must be finite, got ${alpha}`);
    this.state = { ...this.state, opacity: Math.min(1, Math.max(0, alpha)) };
    return this.state;
  }

  current(): VisualizationState {
    return this.state;
  }
}
