import { ApiClient } from './api.js';
import { boxGeometry, linearScale } from './boxplot.js';
import { formatNumber } from './color.js';
import { LatestWins } from './debounce.js';
import type { FiveNumbers } from './boxplot.js';
import type { GsaResponse, Meta, ScenarioSummary } from './types.js';

const SVG_NS = 'http://www.w3.org/2000/svg';
const PLOT_HEIGHT = 180;
const PLOT_TOP = 12;
const COLUMN_WIDTH = 44;

/** Scenario-distance boxplots beside main-effect bars for the current weights. */
export class SensitivityView {
  private readonly latest = new LatestWins();
  private readonly boxHost: HTMLElement;
  private readonly barHost: HTMLElement;
  private readonly yearSelect: HTMLSelectElement;
  private readonly emptyState: HTMLElement;
  private summary: ScenarioSummary | null = null;
  private lastWeights: number[] | null = null;

  constructor(
    root: HTMLElement,
    private readonly api: ApiClient,
    meta: Meta,
    private readonly estimator: 'smoother' | 'binned' = 'binned',
  ) {
    root.innerHTML = '';
    const controls = document.createElement('div');
    controls.className = 'controls';
    const label = document.createElement('label');
    label.textContent = 'years ';
    this.yearSelect = document.createElement('select');
    this.yearSelect.dataset.testid = 'sensitivity-year';
    const all = document.createElement('option');
    all.value = 'all';
    all.textContent = 'all years';
    this.yearSelect.appendChild(all);
    for (const year of meta.years) {
      const option = document.createElement('option');
      option.value = String(year);
      option.textContent = String(year);
      this.yearSelect.appendChild(option);
    }
    this.yearSelect.addEventListener('change', () => {
      void this.renderBoxes();
    });
    label.appendChild(this.yearSelect);
    controls.appendChild(label);
    root.appendChild(controls);

    this.emptyState = document.createElement('div');
    this.emptyState.className = 'empty hidden';
    this.emptyState.dataset.testid = 'sensitivity-empty';
    this.emptyState.textContent = 'no scenario data for this selection';
    root.appendChild(this.emptyState);

    const panels = document.createElement('div');
    panels.className = 'panels';
    this.boxHost = document.createElement('div');
    this.boxHost.dataset.testid = 'scenario-boxplots';
    this.barHost = document.createElement('div');
    this.barHost.dataset.testid = 'effect-bars';
    panels.appendChild(this.boxHost);
    panels.appendChild(this.barHost);
    root.appendChild(panels);
  }

  async init(): Promise<void> {
    this.summary = await this.api.scenarioSummary();
    await this.renderBoxes();
  }

  private async renderBoxes(): Promise<void> {
    const selection = this.yearSelect.value;
    let boxes: (FiveNumbers & { criterion: string })[] = [];
    if (selection === 'all') {
      boxes = (this.summary?.criteria ?? []).map((c) => ({
        criterion: c.criterion,
        min: c.min,
        q1: c.q1,
        median: c.median,
        q3: c.q3,
        max: c.max,
      }));
    } else {
      try {
        const single = await this.api.scenarios(Number(selection));
        // one year: the distribution degenerates to a point per criterion
        boxes = single.distances.map((d) => ({
          criterion: d.criterion,
          min: d.distance,
          q1: d.distance,
          median: d.distance,
          q3: d.distance,
          max: d.distance,
        }));
      } catch {
        boxes = [];
      }
    }
    this.emptyState.classList.toggle('hidden', boxes.length > 0);
    this.drawBoxes(boxes);
  }

  private drawBoxes(boxes: (FiveNumbers & { criterion: string })[]): void {
    this.boxHost.innerHTML = '<h3>rank divergence between weight scenarios</h3>';
    if (!boxes.length) return;
    const top = Math.max(0.1, ...boxes.map((b) => b.max));
    const scale = linearScale(0, top, PLOT_TOP + PLOT_HEIGHT, PLOT_TOP);
    const svg = document.createElementNS(SVG_NS, 'svg');
    svg.setAttribute('width', String(boxes.length * COLUMN_WIDTH + 40));
    svg.setAttribute('height', String(PLOT_HEIGHT + 44));
    boxes.forEach((box, index) => {
      const cx = 40 + index * COLUMN_WIDTH + COLUMN_WIDTH / 2;
      const g = boxGeometry(box, scale);
      svg.appendChild(line(cx, g.whiskerTop, cx, g.whiskerBottom, 'whisker'));
      const rect = document.createElementNS(SVG_NS, 'rect');
      rect.setAttribute('x', String(cx - 12));
      rect.setAttribute('y', String(g.boxTop));
      rect.setAttribute('width', '24');
      rect.setAttribute('height', String(Math.max(1, g.boxBottom - g.boxTop)));
      rect.setAttribute('class', 'box');
      rect.dataset.criterion = box.criterion;
      rect.dataset.median = String(box.median);
      svg.appendChild(rect);
      svg.appendChild(line(cx - 12, g.medianY, cx + 12, g.medianY, 'median'));
      const text = document.createElementNS(SVG_NS, 'text');
      text.setAttribute('x', String(cx));
      text.setAttribute('y', String(PLOT_TOP + PLOT_HEIGHT + 16));
      text.setAttribute('text-anchor', 'middle');
      text.textContent = box.criterion;
      svg.appendChild(text);
    });
    this.boxHost.appendChild(svg);
  }

  /** Re-fetch main effects after a slider commit. */
  async updateWeights(weights: number[]): Promise<void> {
    this.lastWeights = [...weights];
    const response = await this.latest
      .run((signal) => this.api.gsa(weights, { estimator: this.estimator }, signal))
      .catch(() => null);
    if (response === null) return;
    this.drawBars(response);
  }

  private drawBars(response: GsaResponse): void {
    const scheme = response.schemes[0];
    this.barHost.innerHTML = '<h3>variance explained by each criterion</h3>';
    const list = document.createElement('div');
    list.className = 'bars';
    for (const effect of scheme.effects) {
      const row = document.createElement('div');
      row.className = 'bar-row';
      const name = document.createElement('span');
      name.className = 'bar-name';
      name.textContent = effect.criterion;
      const track = document.createElement('div');
      track.className = 'bar-track';
      const fill = document.createElement('div');
      fill.className = 'bar-fill';
      fill.style.width = `${Math.round(100 * Math.max(0, Math.min(1, effect.eta_sq)))}%`;
      fill.dataset.criterion = effect.criterion;
      track.appendChild(fill);
      const value = document.createElement('span');
      value.className = 'bar-value';
      value.dataset.testid = `eta-${effect.criterion}`;
      value.textContent = formatNumber(effect.eta_sq, 3);
      row.appendChild(name);
      row.appendChild(track);
      row.appendChild(value);
      list.appendChild(row);
    }
    const note = document.createElement('div');
    note.className = 'note';
    note.textContent = `${scheme.estimator} estimator, ${scheme.sample_size} samples`;
    this.barHost.appendChild(list);
    this.barHost.appendChild(note);
  }

  currentWeights(): number[] | null {
    return this.lastWeights ? [...this.lastWeights] : null;
  }
}

function line(x1: number, y1: number, x2: number, y2: number, cls: string): SVGLineElement {
  const node = document.createElementNS(SVG_NS, 'line');
  node.setAttribute('x1', String(x1));
  node.setAttribute('y1', String(y1));
  node.setAttribute('x2', String(x2));
  node.setAttribute('y2', String(y2));
  node.setAttribute('class', cls);
  return node;
}
