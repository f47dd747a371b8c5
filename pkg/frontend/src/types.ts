/**
 * Wire types for the scene service (schema version "1").
 *
 * These mirror the JSON the service emits; the viewer never reshapes
 * server data, it only reads it.
 */

export type MediaKind =
  | "image"
  | "animated_image"
  | "video"
  | "video_360"
  | "text"
  | "pdf"
  | "web_page";

export type GuidanceMode = "free" | "conditional" | "sequential";

export type PanelAnchor = "left" | "right" | "bottom" | "center";

export interface Vec3Json {
  x: number;
  y: number;
  z: number;
}

export interface QuaternionJson {
  w: number;
  x: number;
  y: number;
  z: number;
}

export interface CameraPoseJson {
  position: Vec3Json;
  orientation: QuaternionJson;
}

export interface DocumentJson {
  id: string;
  kind: MediaKind;
  source: string;
  title: string;
  description: string;
  provenance_source: string;
  publication_date?: string;
  reference_date?: string;
  tags: string[];
}

export interface ThumbnailJson {
  document_id: string;
  image_source: string;
  locked_image_source?: string;
}

export interface PinJson {
  entity_id: string;
  document_id: string;
  anchor: Vec3Json;
  thumbnail: ThumbnailJson;
  activated: boolean;
  panel_anchor: PanelAnchor;
}

export interface PlaneSizeJson {
  width_m: number;
  height_m: number;
}

export interface WebBoardJson {
  entity_id: string;
  document_id: string;
  anchor: Vec3Json;
  size: PlaneSizeJson;
}

export interface ExtendedDocumentJson {
  entity_id: string;
  document_id: string;
  camera: CameraPoseJson;
  overlay_opacity: number;
}

export interface SlideshowJson {
  entity_id: string;
  center: Vec3Json;
  size: PlaneSizeJson;
  orientation: "horizontal" | "vertical";
  heading_deg: number;
  media: string[];
  current_index: number;
}

export interface GeoserviceLayerJson {
  kind: "wms" | "wfs";
  base_url: string;
  layer_name: string;
  default_style?: string;
}

export interface GuidanceJson {
  mode: GuidanceMode;
  prerequisites: Record<string, string[]>;
  order: string[];
}

export interface SceneJson {
  schema_version: string;
  scene_id: string;
  title: string;
  crs_note: string;
  origin?: { longitude_deg: number; latitude_deg: number; altitude_m: number };
  documents: DocumentJson[];
  thumbnails: ThumbnailJson[];
  pins: PinJson[];
  web_boards: WebBoardJson[];
  extended_documents: ExtendedDocumentJson[];
  slideshows: SlideshowJson[];
  guidance: GuidanceJson;
  tileset_refs: string[];
  layer_refs: GeoserviceLayerJson[];
}

export interface SessionCreatedJson {
  session_id: string;
  scene_id: string;
  mode: GuidanceMode;
  viewed: string[];
  available: string[];
}

export interface ViewRecordedJson {
  session_id: string;
  viewed: string[];
  available: string[];
}

export interface SessionStateJson extends SessionCreatedJson {
  progress: number;
  created_at: string;
  updated_at: string;
}

export interface ServiceErrorJson {
  code: string;
  message: string;
  field_path?: string;
  document_id?: string;
}
