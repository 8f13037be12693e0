import type { BoundingBoxDto } from './types';

/** Web Mercator projection to the unit square (x east, y south). */
export function mercator(lat: number, lon: number): { x: number; y: number } {
  const clamped = Math.max(-85.051128, Math.min(85.051128, lat));
  const rad = (clamped * Math.PI) / 180;
  return {
    x: (lon + 180) / 360,
    y: (1 - Math.log(Math.tan(rad) + 1 / Math.cos(rad)) / Math.PI) / 2,
  };
}

export interface Viewport {
  scale: number;
  offsetX: number;
  offsetY: number;
  width: number;
  height: number;
}

/**
 * Viewport mapping unit-square mercator coordinates into a width x height
 * canvas so the bounding box fits centered with padding on all sides.
 */
export function fitBounds(
  box: BoundingBoxDto,
  width: number,
  height: number,
  padding = 24,
): Viewport {
  const a = mercator(box.maxLat, box.minLon); // top-left on screen
  const b = mercator(box.minLat, box.maxLon); // bottom-right
  const spanX = Math.max(b.x - a.x, 1e-9);
  const spanY = Math.max(b.y - a.y, 1e-9);
  const scale = Math.min((width - 2 * padding) / spanX, (height - 2 * padding) / spanY);
  const centerX = (a.x + b.x) / 2;
  const centerY = (a.y + b.y) / 2;
  return {
    scale,
    offsetX: width / 2 - centerX * scale,
    offsetY: height / 2 - centerY * scale,
    width,
    height,
  };
}

export function toPixel(view: Viewport, lat: number, lon: number): { x: number; y: number } {
  const p = mercator(lat, lon);
  return { x: p.x * view.scale + view.offsetX, y: p.y * view.scale + view.offsetY };
}

/** Slippy tile coordinates covering the viewport at a zoom chosen for ~256 px tiles. */
export function tilesForView(view: Viewport): { z: number; x: number; y: number; px: number; py: number; size: number }[] {
  const z = Math.max(0, Math.min(19, Math.floor(Math.log2(view.scale / 256))));
  const n = 2 ** z;
  const tileSize = view.scale / n;
  const minTileX = Math.max(0, Math.floor((0 - view.offsetX) / tileSize));
  const maxTileX = Math.min(n - 1, Math.floor((view.width - view.offsetX) / tileSize));
  const minTileY = Math.max(0, Math.floor((0 - view.offsetY) / tileSize));
  const maxTileY = Math.min(n - 1, Math.floor((view.height - view.offsetY) / tileSize));
  const tiles = [];
  for (let x = minTileX; x <= maxTileX; x++) {
    for (let y = minTileY; y <= maxTileY; y++) {
      tiles.push({
        z,
        x,
        y,
        px: x * tileSize + view.offsetX,
        py: y * tileSize + view.offsetY,
        size: tileSize,
      });
    }
  }
  return tiles;
}
