import { fitBounds, tilesForView, toPixel, type Viewport } from './geometry';
import type { CompileResponse, WaypointDto } from './types';

const SVG_NS = 'http://www.w3.org/2000/svg';

/** Marker glyph per waypoint kind; mirrors the command the point came from. */
const GLYPHS: Record<string, { shape: 'circle' | 'square' | 'triangle' | 'diamond' | 'wedge'; color: string; r: number }> = {
  StartMark: { shape: 'triangle', color: '#1a9641', r: 7 },
  EndMark: { shape: 'square', color: '#d7191c', r: 6 },
  Transit: { shape: 'circle', color: '#2b83ba', r: 4 },
  TrackCorner: { shape: 'diamond', color: '#fdae61', r: 5 },
  CircleArc: { shape: 'circle', color: '#7b3294', r: 2.5 },
  SpiralArc: { shape: 'circle', color: '#008837', r: 2.5 },
  AdjustMark: { shape: 'wedge', color: '#e66101', r: 7 },
};

function el(name: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, name);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

function marker(kind: string, x: number, y: number): SVGElement {
  const glyph = GLYPHS[kind] ?? { shape: 'circle' as const, color: '#444444', r: 3 };
  const { color, r } = glyph;
  switch (glyph.shape) {
    case 'square':
      return el('rect', {
        x: String(x - r), y: String(y - r), width: String(2 * r), height: String(2 * r),
        fill: color, class: 'marker',
      });
    case 'triangle':
      return el('polygon', {
        points: `${x},${y - r} ${x - r},${y + r} ${x + r},${y + r}`,
        fill: color, class: 'marker',
      });
    case 'diamond':
      return el('polygon', {
        points: `${x},${y - r} ${x + r},${y} ${x},${y + r} ${x - r},${y}`,
        fill: color, class: 'marker',
      });
    case 'wedge':
      return el('polygon', {
        points: `${x - r},${y - r} ${x + r},${y - r} ${x},${y + r}`,
        fill: color, class: 'marker',
      });
    default:
      return el('circle', { cx: String(x), cy: String(y), r: String(r), fill: color, class: 'marker' });
  }
}

/**
 * SVG mission map: tile (or offline grid) background, the waypoint
 * polyline, and one toggleable marker layer per waypoint kind.
 */
export class MissionMap {
  private svg: SVGSVGElement;
  private hidden = new Set<string>();
  private layers = new Map<string, SVGElement>();

  constructor(
    private container: HTMLElement,
    private tileUrl: string | null = null,
    private width = 640,
    private height = 480,
  ) {
    this.svg = el('svg', {
      viewBox: `0 0 ${width} ${height}`,
      width: String(width),
      height: String(height),
      class: 'mission-map',
    }) as SVGSVGElement;
    container.appendChild(this.svg);
  }

  /** Kinds present in the last rendered compile output, in draw order. */
  kinds(): string[] {
    return [...this.layers.keys()];
  }

  isVisible(kind: string): boolean {
    return !this.hidden.has(kind);
  }

  viewBox(): string {
    return this.svg.getAttribute('viewBox') ?? '';
  }

  clear(): void {
    this.svg.replaceChildren();
    this.layers.clear();
  }

  render(compiled: CompileResponse | null): void {
    this.clear();
    if (!compiled || compiled.waypoints.length === 0) {
      return;
    }
    const view = fitBounds(compiled.stats.boundingBox, this.width, this.height);
    this.drawBackground(view);
    this.drawPath(view, compiled.waypoints);
    this.drawMarkers(view, compiled.waypoints);
  }

  /** Toggle one kind's markers; the map extent does not change. */
  setLayerVisible(kind: string, visible: boolean): void {
    if (visible) {
      this.hidden.delete(kind);
    } else {
      this.hidden.add(kind);
    }
    const layer = this.layers.get(kind);
    if (layer) {
      layer.setAttribute('display', visible ? 'inline' : 'none');
    }
  }

  toggleLayer(kind: string): boolean {
    const next = !this.isVisible(kind);
    this.setLayerVisible(kind, next);
    return next;
  }

  private drawBackground(view: Viewport): void {
    const background = el('g', { class: 'background' });
    if (this.tileUrl) {
      for (const tile of tilesForView(view)) {
        const href = this.tileUrl
          .replace('{z}', String(tile.z))
          .replace('{x}', String(tile.x))
          .replace('{y}', String(tile.y));
        const image = el('image', {
          x: String(tile.px), y: String(tile.py),
          width: String(tile.size), height: String(tile.size),
        });
        image.setAttribute('href', href);
        background.appendChild(image);
      }
    } else {
      // offline fallback: a plain grid so tests and air-gapped use need no network
      background.appendChild(el('rect', {
        x: '0', y: '0', width: String(this.width), height: String(this.height),
        fill: '#eef3f7', class: 'offline-grid',
      }));
      for (let gx = 0; gx <= this.width; gx += 64) {
        background.appendChild(el('line', {
          x1: String(gx), y1: '0', x2: String(gx), y2: String(this.height),
          stroke: '#d5dee6', 'stroke-width': '1',
        }));
      }
      for (let gy = 0; gy <= this.height; gy += 64) {
        background.appendChild(el('line', {
          x1: '0', y1: String(gy), x2: String(this.width), y2: String(gy),
          stroke: '#d5dee6', 'stroke-width': '1',
        }));
      }
    }
    this.svg.appendChild(background);
  }

  private drawPath(view: Viewport, waypoints: WaypointDto[]): void {
    const points = waypoints.map((w) => toPixel(view, w.lat, w.lon));
    const d = points
      .map((p, i) => `${i === 0 ? 'M' : 'L'}${p.x.toFixed(1)},${p.y.toFixed(1)}`)
      .join(' ');
    this.svg.appendChild(el('path', {
      d, fill: 'none', stroke: '#30557d', 'stroke-width': '1.5', class: 'mission-path',
    }));
  }

  private drawMarkers(view: Viewport, waypoints: WaypointDto[]): void {
    const order: string[] = [];
    const groups = new Map<string, SVGElement>();
    for (const w of waypoints) {
      if (!groups.has(w.kind)) {
        const group = el('g', { class: 'layer', 'data-kind': w.kind });
        groups.set(w.kind, group);
        order.push(w.kind);
      }
      const p = toPixel(view, w.lat, w.lon);
      const m = marker(w.kind, p.x, p.y);
      m.setAttribute('data-src', String(w.src));
      groups.get(w.kind)!.appendChild(m);
    }
    for (const kind of order) {
      const group = groups.get(kind)!;
      group.setAttribute('display', this.hidden.has(kind) ? 'none' : 'inline');
      this.svg.appendChild(group);
      this.layers.set(kind, group);
    }
  }
}
