/**
 * Pin sprites: camera-facing markers with thumbnails that open a 2D panel.
 *
 * Every pin stays visible whatever the session allows; availability only
 * switches the lock glyph and whether a click opens content. Pins render
 * at constant on-screen size so the overview survives zooming out.
 */

import type { PanelAnchor, PinJson } from "./types.js";

export const PIN_SCREEN_SIZE_PX = 48;
export const PLACEHOLDER_THUMBNAIL = "placeholder";

export interface PinSprite {
  entityId: string;
  documentId: string;
  anchor: { x: number; y: number; z: number };
  /** Thumbnail to draw, or the placeholder glyph when the asset is missing. */
  thumbnailSource: string;
  lockGlyph: boolean;
  clickable: boolean;
  panelAnchor: PanelAnchor;
  /** On-screen sprite size in CSS pixels, independent of camera distance. */
  screenSizePx: number;
}

export interface PinClickOutcome {
  kind: "open_panel" | "lock_feedback";
  documentId: string;
  panelAnchor: PanelAnchor;
}

/**
 * Build sprite models from the scene's pins and the session's availability.
 * The output list always has one entry per pin, in scene order.
 */
export function buildPinSprites(
  pins: PinJson[],
  available: ReadonlySet<string>,
  assetExists: (source: string) => boolean = () => true,
): PinSprite[] {
  return pins.map((pin) => {
    const unlocked = available.has(pin.document_id);
    const source = unlocked
      ? pin.thumbnail.image_source
      : pin.thumbnail.locked_image_source ?? pin.thumbnail.image_source;
    return {
      entityId: pin.entity_id,
      documentId: pin.document_id,
      anchor: pin.anchor,
      thumbnailSource: assetExists(source) ? source : PLACEHOLDER_THUMBNAIL,
      lockGlyph: !unlocked,
      clickable: unlocked,
      panelAnchor: pin.panel_anchor,
      screenSizePx: PIN_SCREEN_SIZE_PX,
    };
  });
}

/** A click never moves the camera: it opens the 2D panel or flashes the lock. */
export function clickPin(sprite: PinSprite): PinClickOutcome {
  return {
    kind: sprite.clickable ? "open_panel" : "lock_feedback",
    documentId: sprite.documentId,
    panelAnchor: sprite.panelAnchor,
  };
}
