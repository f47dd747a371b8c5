/**
 * Browser shell: renders the scene with a WebGL pass in front of a CSS3D
 * document layer, draws pins as constant-size sprites, and wires the
 * guidance session into every interaction.
 *
 * The pure logic lives in the sibling modules; this file binds it to
 * three.js and the DOM.
 */

import * as THREE from "three";
import {
  CSS3DObject,
  CSS3DRenderer,
} from "three/examples/jsm/renderers/CSS3DRenderer.js";

import { SceneServiceClient } from "./api.js";
import { CameraTravel } from "./camera.js";
import { ExtendedDocumentController, sortByReferenceDate } from "./extendedDocument.js";
import { buildPinSprites, clickPin, PIN_SCREEN_SIZE_PX, PLACEHOLDER_THUMBNAIL, type PinSprite } from "./pins.js";
import { currentMedia, dropMedia, slideshowQuad, stepSlideshow } from "./slideshow.js";
import type { CameraPoseJson, SceneJson, SlideshowJson } from "./types.js";

export interface ViewerConfig {
  serviceBaseUrl: string;
  sceneId: string;
  initialCamera: CameraPoseJson;
  mode?: string;
}

/** Material for the board cutout: writes depth and alpha 0, no color. */
export function createCutoutMaterial(): THREE.Material {
  const material = new THREE.MeshBasicMaterial({ color: 0x000000 });
  material.blending = THREE.NoBlending;
  material.side = THREE.DoubleSide;
  return material;
}

function toVector3(v: { x: number; y: number; z: number }): THREE.Vector3 {
  return new THREE.Vector3(v.x, v.y, v.z);
}

function toQuaternion(q: { w: number; x: number; y: number; z: number }): THREE.Quaternion {
  return new THREE.Quaternion(q.x, q.y, q.z, q.w);
}

export class Viewer {
  private readonly client: SceneServiceClient;
  private readonly webgl = new THREE.WebGLRenderer({ alpha: true, antialias: true });
  private readonly cssRenderer = new CSS3DRenderer();
  private readonly scene3d = new THREE.Scene();
  private readonly cssScene = new THREE.Scene();
  private readonly camera: THREE.PerspectiveCamera;
  private readonly raycaster = new THREE.Raycaster();
  private readonly clock = new THREE.Clock();

  private sceneData?: SceneJson;
  private sessionId = "";
  private available = new Set<string>();
  private pinSprites: PinSprite[] = [];
  private pinObjects = new Map<string, THREE.Sprite>();
  private slideshows = new Map<string, SlideshowJson>();
  private slideMeshes = new Map<string, THREE.Mesh>();
  private extended?: ExtendedDocumentController;
  private travel?: CameraTravel;
  private panel?: HTMLElement;

  constructor(
    private readonly config: ViewerConfig,
    private readonly container: HTMLElement,
  ) {
    this.client = new SceneServiceClient(config.serviceBaseUrl);
    this.camera = new THREE.PerspectiveCamera(55, 1, 0.1, 50_000);
    this.camera.up.set(0, 0, 1); // scene frame is z-up (east/north/up)
  }

  async start(): Promise<void> {
    if (!(await this.client.probe(this.config.sceneId))) {
      this.showErrorScreen(
        `Cannot reach the scene service at ${this.config.serviceBaseUrl}. ` +
          "Check that it is running and that this origin is allowed.",
      );
      return;
    }
    this.sceneData = await this.client.getScene(this.config.sceneId);
    const session = await this.client.createSession(this.config.sceneId, this.config.mode);
    this.sessionId = session.session_id;
    this.available = new Set(session.available);

    this.setupDom();
    this.applyPose(this.config.initialCamera);
    this.buildStaticScene();
    this.rebuildPins();
    this.extended = new ExtendedDocumentController(
      this.sceneData.extended_documents,
      sortByReferenceDate(this.sceneData.documents),
    );
    this.webgl.setAnimationLoop(() => this.renderFrame());
  }

  private setupDom(): void {
    const size = () => ({
      w: this.container.clientWidth || window.innerWidth,
      h: this.container.clientHeight || window.innerHeight,
    });
    const { w, h } = size();
    for (const renderer of [this.cssRenderer, this.webgl] as const) {
      renderer.setSize(w, h);
      const el = renderer.domElement;
      el.style.position = "absolute";
      el.style.top = "0";
      el.style.left = "0";
      this.container.appendChild(el);
    }
    // Document layer behind, transparent WebGL canvas in front.
    this.cssRenderer.domElement.style.zIndex = "0";
    this.webgl.domElement.style.zIndex = "1";
    this.camera.aspect = w / h;
    this.camera.updateProjectionMatrix();
    window.addEventListener("resize", () => {
      const { w: nw, h: nh } = size();
      this.webgl.setSize(nw, nh);
      this.cssRenderer.setSize(nw, nh);
      this.camera.aspect = nw / nh;
      this.camera.updateProjectionMatrix();
    });
    this.webgl.domElement.addEventListener("pointerdown", (ev) => this.onPointerDown(ev));
    this.webgl.domElement.addEventListener("dragover", (ev) => ev.preventDefault());
    this.webgl.domElement.addEventListener("drop", (ev) => this.onDrop(ev));
  }

  private buildStaticScene(): void {
    if (!this.sceneData) return;
    this.scene3d.add(new THREE.AmbientLight(0xffffff, 1.0));

    // City geometry arrives as opaque tileset assets; stand-ins keep the
    // depth buffer honest until a tileset loader is plugged in.
    for (const board of this.sceneData.web_boards) {
      const geometry = new THREE.PlaneGeometry(board.size.width_m, board.size.height_m);
      const mesh = new THREE.Mesh(geometry, createCutoutMaterial());
      mesh.position.copy(toVector3(board.anchor));
      mesh.name = `board:${board.entity_id}`;
      this.scene3d.add(mesh);

      const iframe = document.createElement("iframe");
      iframe.src = this.client.documentContentUrl(board.document_id);
      iframe.style.border = "0";
      const pxPerMeter = 40;
      iframe.width = String(board.size.width_m * pxPerMeter);
      iframe.height = String(board.size.height_m * pxPerMeter);
      iframe.addEventListener("error", () => this.showErrorCard(board.entity_id));
      const cssObject = new CSS3DObject(iframe);
      cssObject.position.copy(toVector3(board.anchor));
      cssObject.scale.setScalar(1 / pxPerMeter);
      cssObject.name = `board-page:${board.entity_id}`;
      this.cssScene.add(cssObject);
    }

    for (const show of this.sceneData.slideshows) {
      this.slideshows.set(show.entity_id, show);
      const quad = slideshowQuad(show);
      const geometry = new THREE.BufferGeometry();
      const positions = new Float32Array(
        [0, 1, 2, 0, 2, 3].flatMap((i) => {
          const c = quad.corners[i]!;
          return [c.x, c.y, c.z];
        }),
      );
      geometry.setAttribute("position", new THREE.BufferAttribute(positions, 3));
      geometry.setAttribute(
        "uv",
        new THREE.BufferAttribute(new Float32Array([0, 0, 1, 0, 1, 1, 0, 0, 1, 1, 0, 1]), 2),
      );
      geometry.computeVertexNormals();
      const material = new THREE.MeshBasicMaterial({ side: THREE.DoubleSide });
      const mesh = new THREE.Mesh(geometry, material);
      mesh.name = `slideshow:${show.entity_id}`;
      this.slideMeshes.set(show.entity_id, mesh);
      this.scene3d.add(mesh);
      if (show.media.length > 0) this.refreshSlideTexture(show.entity_id);
    }
  }

  private rebuildPins(): void {
    if (!this.sceneData) return;
    for (const sprite of this.pinObjects.values()) this.scene3d.remove(sprite);
    this.pinObjects.clear();
    this.pinSprites = buildPinSprites(this.sceneData.pins, this.available);
    const loader = new THREE.TextureLoader();
    for (const model of this.pinSprites) {
      const material = new THREE.SpriteMaterial({ sizeAttenuation: false });
      if (model.thumbnailSource !== PLACEHOLDER_THUMBNAIL) {
        material.map = loader.load(model.thumbnailSource);
      } else {
        material.color = new THREE.Color(0x888888);
      }
      if (model.lockGlyph) material.color = new THREE.Color(0xaaaaaa);
      const sprite = new THREE.Sprite(material);
      sprite.position.copy(toVector3(model.anchor));
      // sizeAttenuation=false keeps pins at constant screen size; scale is
      // expressed as a fraction of the viewport height.
      const frac = PIN_SCREEN_SIZE_PX / (this.container.clientHeight || window.innerHeight);
      sprite.scale.set(frac, frac, 1);
      sprite.name = `pin:${model.entityId}`;
      this.pinObjects.set(model.entityId, sprite);
      this.scene3d.add(sprite);
    }
  }

  private onPointerDown(ev: PointerEvent): void {
    const rect = this.webgl.domElement.getBoundingClientRect();
    const ndc = new THREE.Vector2(
      ((ev.clientX - rect.left) / rect.width) * 2 - 1,
      -((ev.clientY - rect.top) / rect.height) * 2 + 1,
    );
    this.raycaster.setFromCamera(ndc, this.camera);
    const hits = this.raycaster.intersectObjects([...this.pinObjects.values()], false);
    const first = hits[0];
    if (!first) return;
    const entityId = first.object.name.slice("pin:".length);
    const model = this.pinSprites.find((p) => p.entityId === entityId);
    if (!model) return;
    const outcome = clickPin(model);
    if (outcome.kind === "lock_feedback") {
      this.flashLock(entityId);
      return;
    }
    void this.openPanel(outcome.documentId, outcome.panelAnchor);
  }

  private async openPanel(documentId: string, anchor: string): Promise<void> {
    try {
      const result = await this.client.recordView(this.sessionId, documentId);
      this.available = new Set(result.available);
      this.rebuildPins();
    } catch {
      this.flashLock(documentId);
      return;
    }
    this.panel?.remove();
    const panel = document.createElement("div");
    panel.className = `mediascene-panel mediascene-panel-${anchor}`;
    const frame = document.createElement("iframe");
    frame.src = this.client.documentContentUrl(documentId);
    frame.style.width = "100%";
    frame.style.height = "100%";
    frame.style.border = "0";
    const close = document.createElement("button");
    close.textContent = "Close";
    close.addEventListener("click", () => panel.remove());
    panel.append(close, frame);
    this.container.appendChild(panel);
    this.panel = panel;
  }

  private onDrop(ev: DragEvent): void {
    ev.preventDefault();
    const file = ev.dataTransfer?.files?.[0];
    const firstShow = [...this.slideshows.values()][0];
    if (!file || !firstShow) return;
    const outcome = dropMedia(firstShow, file.name, `local:${file.name}`);
    if (outcome.kind === "rejected") {
      this.toast(outcome.toast);
      return;
    }
    this.slideshows.set(firstShow.entity_id, outcome.show);
    this.toast(`added ${file.name} to the slideshow`);
  }

  stepShow(entityId: string, delta: number): void {
    const show = this.slideshows.get(entityId);
    if (!show) return;
    this.slideshows.set(entityId, stepSlideshow(show, delta));
    this.refreshSlideTexture(entityId);
  }

  private refreshSlideTexture(entityId: string): void {
    const show = this.slideshows.get(entityId);
    const mesh = this.slideMeshes.get(entityId);
    if (!show || !mesh || show.media.length === 0) return;
    const documentId = currentMedia(show);
    const url = documentId.startsWith("local:")
      ? documentId.slice("local:".length)
      : this.client.documentContentUrl(documentId);
    (mesh.material as THREE.MeshBasicMaterial).map = new THREE.TextureLoader().load(url);
    (mesh.material as THREE.MeshBasicMaterial).needsUpdate = true;
  }

  /**
   * Engage an extended document: checks availability, starts the camera
   * travel, and records the view once the session allows it.
   */
  async engageExtendedDocument(entityId: string): Promise<void> {
    if (!this.extended) return;
    const pose: CameraPoseJson = {
      position: { x: this.camera.position.x, y: this.camera.position.y, z: this.camera.position.z },
      orientation: {
        w: this.camera.quaternion.w,
        x: this.camera.quaternion.x,
        y: this.camera.quaternion.y,
        z: this.camera.quaternion.z,
      },
    };
    try {
      const plan = this.extended.engage(entityId, pose, this.available);
      const entity = this.sceneData?.extended_documents.find((e) => e.entity_id === entityId);
      if (entity) {
        const result = await this.client.recordView(this.sessionId, entity.document_id);
        this.available = new Set(result.available);
        this.rebuildPins();
      }
      this.flyTo(new CameraTravel(plan));
    } catch (err) {
      this.toast(err instanceof Error ? err.message : String(err));
    }
  }

  private renderFrame(): void {
    const dt = this.clock.getDelta();
    if (this.travel) {
      const phase = this.travel.advance(dt);
      this.applyPose(this.travel.pose());
      if (phase === "arrived") this.travel = undefined;
    }
    if (this.extended) {
      this.extended.tick(dt);
    }
    this.webgl.render(this.scene3d, this.camera);
    this.cssRenderer.render(this.cssScene, this.camera);
  }

  private applyPose(pose: CameraPoseJson): void {
    this.camera.position.copy(toVector3(pose.position));
    this.camera.quaternion.copy(toQuaternion(pose.orientation));
  }

  flyTo(plan: CameraTravel): void {
    this.travel = plan;
  }

  private flashLock(id: string): void {
    this.toast(`this content is still locked (${id})`);
  }

  private toast(message: string): void {
    const el = document.createElement("div");
    el.className = "mediascene-toast";
    el.textContent = message;
    this.container.appendChild(el);
    setTimeout(() => el.remove(), 2500);
  }

  private showErrorCard(entityId: string): void {
    this.toast(`failed to load the page for board ${entityId}`);
  }

  private showErrorScreen(message: string): void {
    const screen = document.createElement("div");
    screen.className = "mediascene-error-screen";
    screen.textContent = message;
    this.container.appendChild(screen);
  }
}
